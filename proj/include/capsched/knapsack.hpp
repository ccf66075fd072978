#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "core.hpp"

namespace capsched {

struct KnapsackItem {
    double volume = 0.0;
    double weight = 0.0;
};

struct KnapsackSelection {
    std::vector<std::size_t> selected;  // indices into the item list, ascending
    double total_volume = 0.0;          // true (unrounded) volume of the selection
    double total_weight = 0.0;
    double budget = 0.0;
};

/// Budget-relaxed knapsack: volumes are rounded down to multiples of
/// theta = eps*budget/n and a unit-capacity table of K = floor(budget/theta)
/// entries is filled in O(n*K) = O(n^2/eps). Rounding only shrinks volumes,
/// so the returned weight is at least the exact optimum for the true budget
/// while the true volume of the selection overshoots by at most n*theta,
/// i.e. total_volume <= (1+eps)*budget.
inline KnapsackSelection knapsack_augmented(const std::vector<KnapsackItem>& items, double budget,
                                            double eps) {
    if (!(budget > 0.0)) throw DomainError("knapsack budget must be > 0");
    if (!(eps > 0.0)) throw DomainError("knapsack eps must be > 0");
    KnapsackSelection sel;
    sel.budget = budget;
    const std::size_t n = items.size();
    if (n == 0) return sel;

    const double theta = eps * budget / static_cast<double>(n);
    // budget/theta = n/eps up to roundoff; nudge so an exact multiple is kept.
    const std::size_t cap = static_cast<std::size_t>(std::floor(budget / theta + 1e-9));
    std::vector<std::size_t> units(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (items[i].volume < 0.0) throw DomainError("knapsack volumes must be >= 0");
        units[i] = static_cast<std::size_t>(std::floor(items[i].volume / theta));
    }

    std::vector<double> best(cap + 1, 0.0);
    std::vector<std::vector<char>> take(n, std::vector<char>(cap + 1, 0));
    for (std::size_t i = 0; i < n; ++i) {
        if (units[i] > cap) continue;
        for (std::size_t u = cap;; --u) {
            if (u >= units[i] && best[u - units[i]] + items[i].weight > best[u]) {
                best[u] = best[u - units[i]] + items[i].weight;
                take[i][u] = 1;
            }
            if (u == 0) break;
        }
    }

    std::size_t u = cap;
    std::vector<std::size_t> picked;
    for (std::size_t i = n; i-- > 0;) {
        if (take[i][u]) {
            picked.push_back(i);
            u -= units[i];
        }
    }
    for (std::size_t i = picked.size(); i-- > 0;) {
        sel.selected.push_back(picked[i]);
        sel.total_volume += items[picked[i]].volume;
        sel.total_weight += items[picked[i]].weight;
    }
    return sel;
}

}  // namespace capsched
