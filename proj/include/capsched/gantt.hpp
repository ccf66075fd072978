#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdio>
#include <string>
#include <vector>

#include "core.hpp"
#include "pack_schedule.hpp"
#include "profile.hpp"

namespace capsched {

struct GanttOptions {
    double band_height = 96.0;
    double plot_width = 860.0;
    std::vector<PackIteration> iterations;  // drawn as interval boundaries if present
};

namespace detail {

inline std::string fmt2(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

inline std::string fmt_tick(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

// Stacks each machine's jobs by demand. Jobs are processed in (start, index)
// order; each takes the lowest workable capacity offset, backtracking when a
// greedy choice strands a later job (a feasible schedule can fragment the
// band, so plain first-fit is not enough). The result is the
// lexicographically least offset vector, which equals pure first-fit whenever
// first-fit succeeds. The search is budgeted; layouts are presentational, so
// running out of budget is reported, never silently patched.
struct StackedRect {
    std::size_t job;
    int machine;
    double y;  // capacity offset in [0, 1 - d]
};

class StackLayout {
public:
    StackLayout(const Instance& inst, const Schedule& sched) : inst_(inst), sched_(sched) {
        for (std::size_t k = 0; k < inst.n(); ++k) order_.push_back(k);
        std::stable_sort(order_.begin(), order_.end(), [&](std::size_t a, std::size_t b) {
            return sched.assignments[a].start < sched.assignments[b].start;
        });
        y_.resize(inst.n(), 0.0);
    }

    std::vector<StackedRect> run() {
        if (!place(0))
            throw RenderError(budget_ == 0
                                  ? "no capacity-offset layout found within the search budget"
                                  : "no capacity-offset layout exists for this schedule");
        std::vector<StackedRect> out(inst_.n());
        for (std::size_t k = 0; k < inst_.n(); ++k)
            out[k] = {k, sched_.assignments[k].machine, y_[k]};
        return out;
    }

private:
    struct Band {
        double lo, hi;
    };

    bool overlaps(std::size_t a, std::size_t b) const {
        if (sched_.assignments[a].machine != sched_.assignments[b].machine) return false;
        double ab = sched_.assignments[a].start, ae = ab + inst_.jobs[a].p;
        double bb = sched_.assignments[b].start, be = bb + inst_.jobs[b].p;
        return ab < be && bb < ae;
    }

    bool place(std::size_t pos) {
        if (pos == order_.size()) return true;
        if (budget_ == 0) return false;
        --budget_;

        std::size_t j = order_[pos];
        double d = inst_.jobs[j].d;
        std::vector<Band> live;
        for (std::size_t k = 0; k < pos; ++k)
            if (overlaps(order_[k], j))
                live.push_back({y_[order_[k]], y_[order_[k]] + inst_.jobs[order_[k]].d});

        // candidate offsets: the floor, resting on a placed band, hanging
        // under a placed band, or flush with the ceiling
        std::vector<double> cands = {0.0, 1.0 - d};
        for (const Band& q : live) {
            cands.push_back(q.hi);
            cands.push_back(q.lo - d);
        }
        std::sort(cands.begin(), cands.end());
        double last = -1.0;
        for (double y : cands) {
            if (y < -1e-12 || y + d > 1.0 + kCapacityTol) continue;
            y = std::max(y, 0.0);
            if (y <= last + 1e-12) continue;
            last = y;
            bool clear = true;
            for (const Band& q : live)
                if (y < q.hi - 1e-12 && q.lo < y + d - 1e-12) {
                    clear = false;
                    break;
                }
            if (!clear) continue;
            y_[j] = y;
            if (place(pos + 1)) return true;
            if (budget_ == 0) return false;
        }
        return false;
    }

    const Instance& inst_;
    const Schedule& sched_;
    std::vector<std::size_t> order_;
    std::vector<double> y_;
    std::size_t budget_ = 200000;
};

inline std::vector<StackedRect> stack_jobs(const Instance& inst, const Schedule& sched) {
    return StackLayout(inst, sched).run();
}

inline double nice_step(double horizon) {
    double raw = horizon / 12.0;
    double mag = std::pow(10.0, std::floor(std::log10(std::max(raw, 1e-9))));
    for (double mult : {1.0, 2.0, 5.0, 10.0})
        if (mag * mult >= raw) return mag * mult;
    return mag * 10.0;
}

}  // namespace detail

/// Renders the schedule as an SVG document: one horizontal band per machine,
/// each job a rectangle spanning [start, start+p) horizontally and d of the
/// band vertically. Infeasible schedules are rejected before layout. When
/// iteration metadata is supplied, interval boundaries appear as dashed
/// rules with level labels.
inline std::string render_gantt(const Instance& inst, const Schedule& sched,
                                const GanttOptions& opts = {}) {
    FeasibilityReport feas = check_feasibility(inst, sched);
    if (!feas.ok()) {
        const FeasibilityViolation& v = feas.violations.front();
        throw RenderError("schedule infeasible on machine " + std::to_string(v.machine) +
                          " in [" + detail::fmt2(v.begin) + ", " + detail::fmt2(v.end) +
                          "): demand " + detail::fmt2(v.demand));
    }
    std::vector<detail::StackedRect> stacked = detail::stack_jobs(inst, sched);

    double horizon = 1.0;
    for (std::size_t k = 0; k < inst.n(); ++k)
        horizon = std::max(horizon, sched.assignments[k].start + inst.jobs[k].p);
    for (const PackIteration& it : opts.iterations)
        if (!it.newly_packed.empty()) horizon = std::max(horizon, it.interval_end);

    const double left = 52.0, top = 28.0, gap = 16.0, bottom = 34.0;
    const double xs = opts.plot_width / horizon;
    const double width = left + opts.plot_width + 24.0;
    const double height =
        top + inst.machines * opts.band_height + (inst.machines - 1) * gap + bottom;

    static constexpr const char* kPalette[] = {"#4e79a7", "#f28e2b", "#59a14f", "#e15759",
                                               "#76b7b2", "#edc948", "#b07aa1", "#ff9da7",
                                               "#9c755f", "#bab0ac", "#86bcb6", "#d37295"};

    std::string svg;
    auto put = [&](const std::string& s) { svg += s; };
    put("<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + detail::fmt2(width) +
        "\" height=\"" + detail::fmt2(height) + "\" viewBox=\"0 0 " + detail::fmt2(width) + " " +
        detail::fmt2(height) + "\">\n");
    put("<style>text{font-family:monospace;font-size:11px;fill:#222}</style>\n");
    put("<rect x=\"0\" y=\"0\" width=\"" + detail::fmt2(width) + "\" height=\"" +
        detail::fmt2(height) + "\" fill=\"#ffffff\"/>\n");

    auto band_top = [&](int m) { return top + m * (opts.band_height + gap); };

    for (int m = 0; m < inst.machines; ++m) {
        put("<rect x=\"" + detail::fmt2(left) + "\" y=\"" + detail::fmt2(band_top(m)) +
            "\" width=\"" + detail::fmt2(opts.plot_width) + "\" height=\"" +
            detail::fmt2(opts.band_height) + "\" fill=\"#f4f4f4\" stroke=\"#999\"/>\n");
        put("<text x=\"8\" y=\"" + detail::fmt2(band_top(m) + opts.band_height / 2.0 + 4.0) +
            "\">m" + std::to_string(m + 1) + "</text>\n");
    }

    double step = detail::nice_step(horizon);
    for (double t = 0.0; t <= horizon + 1e-9; t += step) {
        double x = left + t * xs;
        put("<line x1=\"" + detail::fmt2(x) + "\" y1=\"" + detail::fmt2(top - 6.0) + "\" x2=\"" +
            detail::fmt2(x) + "\" y2=\"" + detail::fmt2(height - bottom + 8.0) +
            "\" stroke=\"#ddd\"/>\n");
        put("<text x=\"" + detail::fmt2(x - 4.0) + "\" y=\"" + detail::fmt2(height - bottom + 22.0) +
            "\">" + detail::fmt_tick(t) + "</text>\n");
    }

    for (std::size_t k = 0; k < inst.n(); ++k) {
        const Assignment& a = sched.assignments[k];
        const Job& job = inst.jobs[k];
        const detail::StackedRect& st = stacked[k];
        double x = left + a.start * xs;
        double w = job.p * xs;
        // capacity offset 0 sits at the bottom of the band
        double y = band_top(a.machine) + (1.0 - st.y - job.d) * opts.band_height;
        double h = job.d * opts.band_height;
        put("<rect data-job=\"" + job.id + "\" data-machine=\"" + std::to_string(a.machine) +
            "\" data-start=\"" + detail::fmt_tick(round12(a.start)) + "\" x=\"" + detail::fmt2(x) +
            "\" y=\"" + detail::fmt2(y) + "\" width=\"" + detail::fmt2(w) + "\" height=\"" +
            detail::fmt2(h) + "\" fill=\"" + kPalette[k % 12] +
            "\" stroke=\"#333\" fill-opacity=\"0.85\"><title>" + job.id +
            " p=" + detail::fmt_tick(round12(job.p)) + " d=" + detail::fmt_tick(round12(job.d)) +
            " w=" + detail::fmt_tick(round12(job.w)) + " start=" +
            detail::fmt_tick(round12(a.start)) + "</title></rect>\n");
        if (w >= 26.0 && h >= 13.0)
            put("<text x=\"" + detail::fmt2(x + 3.0) + "\" y=\"" + detail::fmt2(y + 12.0) + "\">" +
                job.id + "</text>\n");
    }

    for (const PackIteration& it : opts.iterations) {
        double x = left + it.interval_begin * xs;
        if (it.interval_begin > horizon) break;
        put("<line x1=\"" + detail::fmt2(x) + "\" y1=\"" + detail::fmt2(top - 10.0) + "\" x2=\"" +
            detail::fmt2(x) + "\" y2=\"" + detail::fmt2(height - bottom + 8.0) +
            "\" stroke=\"#b33\" stroke-dasharray=\"5,4\"/>\n");
        put("<text x=\"" + detail::fmt2(x + 3.0) + "\" y=\"" + detail::fmt2(top - 12.0) +
            "\" fill=\"#b33\">L" + std::to_string(it.level) + "</text>\n");
    }

    put("</svg>\n");
    return svg;
}

}  // namespace capsched
