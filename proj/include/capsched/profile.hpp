#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

#include "core.hpp"

namespace capsched {

/// Piecewise-constant demand profile of one machine. Breakpoints are the
/// sorted distinct event times; usage_[k] holds the total demand on
/// [breakpoints_[k], breakpoints_[k+1]). Usage outside the covered range
/// is zero.
class CapacityProfile {
public:
    void clear() {
        breakpoints_.clear();
        usage_.clear();
    }

    bool empty() const { return usage_.empty(); }

    std::size_t segments() const { return usage_.size(); }

    const std::vector<double>& breakpoints() const { return breakpoints_; }

    double segment_begin(std::size_t k) const { return breakpoints_[k]; }
    double segment_end(std::size_t k) const { return breakpoints_[k + 1]; }
    double segment_usage(std::size_t k) const { return usage_[k]; }

    /// Adds one job occupying [start, start+duration) with the given demand.
    void add(double start, double duration, double demand) {
        if (duration <= 0.0) return;
        double end = start + duration;
        std::size_t a = insert_event(start);
        std::size_t b = insert_event(end);
        for (std::size_t k = a; k < b; ++k) usage_[k] += demand;
    }

    double usage_at(double t) const {
        if (usage_.empty()) return 0.0;
        auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), t);
        if (it == breakpoints_.begin() || it == breakpoints_.end()) return 0.0;
        return usage_[static_cast<std::size_t>(it - breakpoints_.begin()) - 1];
    }

    /// Integral of the profile; equals the total volume of the added jobs.
    double integral() const {
        double s = 0.0;
        for (std::size_t k = 0; k < usage_.size(); ++k)
            s += usage_[k] * (breakpoints_[k + 1] - breakpoints_[k]);
        return s;
    }

    /// Earliest t >= 0 such that usage stays <= 1 - d (plus tolerance) on all
    /// of [t, t+p). Left-to-right sweep over segments: a blocking segment that
    /// intersects the candidate window pushes the candidate to its end, so the
    /// whole query is one pass.
    double earliest_fit(double p, double d) const {
        double t = 0.0;
        for (std::size_t k = 0; k < usage_.size(); ++k) {
            if (breakpoints_[k] >= t + p) break;
            if (usage_[k] + d > 1.0 + kCapacityTol && breakpoints_[k + 1] > t)
                t = breakpoints_[k + 1];
        }
        return t;
    }

private:
    // Returns the index of t in breakpoints_, inserting it (and splitting the
    // covering segment) if absent.
    std::size_t insert_event(double t) {
        auto it = std::lower_bound(breakpoints_.begin(), breakpoints_.end(), t);
        std::size_t idx = static_cast<std::size_t>(it - breakpoints_.begin());
        if (it != breakpoints_.end() && *it == t) return idx;
        breakpoints_.insert(it, t);
        if (breakpoints_.size() == 1) return idx;
        if (idx == 0) {
            usage_.insert(usage_.begin(), 0.0);
        } else if (idx == breakpoints_.size() - 1) {
            usage_.push_back(0.0);
        } else {
            usage_.insert(usage_.begin() + static_cast<std::ptrdiff_t>(idx) - 1, usage_[idx - 1]);
        }
        return idx;
    }

    std::vector<double> breakpoints_;
    std::vector<double> usage_;
};

/// Profile of one machine under a schedule.
inline CapacityProfile capacity_profile(const Instance& inst, const Schedule& sched, int machine) {
    validate_schedule_structure(inst, sched);
    CapacityProfile prof;
    for (std::size_t k = 0; k < inst.n(); ++k)
        if (sched.assignments[k].machine == machine)
            prof.add(sched.assignments[k].start, inst.jobs[k].p, inst.jobs[k].d);
    return prof;
}

inline double earliest_feasible_start(const CapacityProfile& prof, double p, double d) {
    return prof.earliest_fit(p, d);
}

struct FeasibilityViolation {
    int machine = 0;
    double begin = 0.0;
    double end = 0.0;
    double demand = 0.0;  // total demand on [begin, end)
};

struct FeasibilityReport {
    std::vector<FeasibilityViolation> violations;
    bool ok() const { return violations.empty(); }
};

/// Scans every machine profile for segments whose total demand exceeds one.
/// Segments narrower than the capacity tolerance are skipped: rounding can
/// split an exact abutment into a one-ulp overlap, and times are only
/// meaningful to the same tolerance as demands.
inline FeasibilityReport check_feasibility(const Instance& inst, const Schedule& sched) {
    validate_schedule_structure(inst, sched);
    FeasibilityReport report;
    for (int m = 0; m < inst.machines; ++m) {
        CapacityProfile prof = capacity_profile(inst, sched, m);
        for (std::size_t k = 0; k < prof.segments(); ++k)
            if (prof.segment_usage(k) > 1.0 + kCapacityTol &&
                prof.segment_end(k) - prof.segment_begin(k) > kCapacityTol)
                report.violations.push_back(
                    {m, prof.segment_begin(k), prof.segment_end(k), prof.segment_usage(k)});
    }
    return report;
}

}  // namespace capsched
