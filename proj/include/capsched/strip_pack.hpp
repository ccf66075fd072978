#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <string>
#include <vector>

#include "core.hpp"

namespace capsched {

struct StripItem {
    std::size_t job = 0;  // caller-side identifier, carried through
    double p = 0.0;
    double d = 0.0;
};

struct StripRect {
    std::size_t job = 0;
    double time_offset = 0.0;
    double capacity_offset = 0.0;
    double p = 0.0;
    double d = 0.0;
};

struct StripPlacement {
    std::vector<StripRect> rects;        // placement order (p nonincreasing)
    std::vector<double> shelf_starts;    // time offset of each shelf
    double width = 0.0;                  // total time extent
};

/// Shelf packing into a strip of unit capacity. Items are laid out by
/// nonincreasing p (ties keep input order); each shelf's time extent is the p
/// of its first item, and items stack by demand until the next one would
/// exceed capacity one. Width is at most 2 * total volume + max p: every
/// shelf after the first is fuller than its own width when combined with the
/// first item of the next shelf.
inline StripPlacement strip_pack(const std::vector<StripItem>& items, double eps,
                                 double level_budget) {
    if (!(level_budget > 0.0)) throw DomainError("strip budget must be > 0");
    if (!(eps > 0.0)) throw DomainError("strip eps must be > 0");
    for (const StripItem& it : items)
        if (it.p > (1.0 + eps) * level_budget)
            throw PackPreconditionError("item " + std::to_string(it.job) + " has p " +
                                        std::to_string(it.p) + " above (1+eps) * budget " +
                                        std::to_string((1.0 + eps) * level_budget));

    StripPlacement out;
    if (items.empty()) return out;

    std::vector<std::size_t> order(items.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return items[a].p > items[b].p; });

    double shelf_start = 0.0;
    double shelf_width = 0.0;
    double shelf_demand = 0.0;
    bool open = false;
    for (std::size_t k : order) {
        const StripItem& it = items[k];
        if (!open || shelf_demand + it.d > 1.0 + kCapacityTol) {
            shelf_start += shelf_width;
            shelf_width = it.p;
            shelf_demand = 0.0;
            open = true;
            out.shelf_starts.push_back(shelf_start);
        }
        out.rects.push_back({it.job, shelf_start, shelf_demand, it.p, it.d});
        shelf_demand += it.d;
    }
    out.width = shelf_start + shelf_width;
    return out;
}

}  // namespace capsched
