#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "compress.hpp"
#include "core.hpp"
#include "profile.hpp"
#include "schedulers.hpp"

namespace capsched {

// Relative tolerance for ratio comparisons against proven factors.
inline constexpr double kRatioTol = 1e-6;

/// Sum of w_j * p_j. Valid lower bound on the optimum for any machine count:
/// no job can finish before running for its full duration.
inline double cn_lower_bound(const Instance& inst) {
    double s = 0.0;
    for (const Job& j : inst.jobs) s += j.w * j.p;
    return s;
}

/// Optimal single-machine cost of the compressed instance divided by M.
/// Compression can only lower the optimum and spreading over M machines can
/// save at most a factor M, so this bounds the capacitated optimum from below.
inline double eastman_lower_bound(const Instance& inst, int machines) {
    if (machines < 1) throw DomainError("eastman bound needs machines >= 1");
    return smith_cost(compress(inst)) / static_cast<double>(machines);
}

/// Approximation factor 1 + 1/(1-alpha) guaranteed for the greedy scheduler
/// when every demand is at most alpha < 1.
inline double theorem1_factor(double alpha) {
    if (!(alpha < 1.0)) throw DomainError("factor 1 + 1/(1-alpha) needs alpha < 1");
    return 1.0 + 1.0 / (1.0 - alpha);
}

/// Approximation factor of the hybrid scheduler on M >= 2 machines with the
/// prescribed machine split: max(1 + 2M/m_low, 1 + M/m_high). Equals 4 at
/// M = 3k, approaches 4 from above inside the other residue classes.
inline double hybrid_bound_factor(int machines) {
    if (machines < 2) throw InsufficientMachines("hybrid factor needs at least two machines");
    Instance empty_probe;  // split depends on M only
    empty_probe.machines = machines;
    JobSplit split = split_jobs(empty_probe, machines);
    double m = static_cast<double>(machines);
    double a = 1.0 + 2.0 * m / static_cast<double>(split.m_low);
    double b = 1.0 + m / static_cast<double>(split.m_high);
    return std::max(a, b);
}

/// Both proven factors in one call. hybrid_factor is absent when fewer than
/// two machines are available, matching the split's requirement.
struct TheoremBounds {
    double theorem1_factor = 0.0;
    std::optional<double> hybrid_factor;
};

inline TheoremBounds theorem_bounds(double alpha, int machines) {
    TheoremBounds t;
    t.theorem1_factor = theorem1_factor(alpha);
    if (machines >= 2) t.hybrid_factor = hybrid_bound_factor(machines);
    return t;
}

struct BoundReport {
    int machines = 1;
    double alpha = 0.0;        // max demand
    double cn = 0.0;           // sum of w*p
    double c1_hat = 0.0;       // optimal single-machine cost after compression
    double eastman_lb = 0.0;    // c1_hat / M
    double eastman_sharp = 0.0;  // c1_hat/M + (1 - 1/M)/2 * sum of w*p_hat
    double combined_lb = 0.0;   // max(cn, eastman); the bound used by reports
    std::optional<double> theorem1_factor;  // 1 + 1/(1-alpha), absent when alpha = 1
    std::optional<double> hybrid_factor;  // B(M), absent when M < 2
};

inline BoundReport bound_report(const Instance& inst, int machines) {
    if (machines < 1) throw DomainError("bound report needs machines >= 1");
    BoundReport r;
    r.machines = machines;
    r.alpha = inst.max_demand();
    r.cn = cn_lower_bound(inst);
    CompressedInstance comp = compress(inst);
    r.c1_hat = smith_cost(comp);
    double m = static_cast<double>(machines);
    r.eastman_lb = r.c1_hat / m;
    double cn_hat = 0.0;
    for (std::size_t k = 0; k < comp.n(); ++k) cn_hat += comp.weights[k] * comp.p_hat[k];
    r.eastman_sharp = r.c1_hat / m + 0.5 * (1.0 - 1.0 / m) * cn_hat;
    r.combined_lb = std::max(r.cn, r.eastman_lb);
    if (r.alpha < 1.0) r.theorem1_factor = theorem1_factor(r.alpha);
    if (machines >= 2) r.hybrid_factor = hybrid_bound_factor(machines);
    return r;
}

inline BoundReport bound_report(const Instance& inst) { return bound_report(inst, inst.machines); }

/// Runtime certificates for the three structural facts the greedy analysis
/// rests on, checked against a concrete schedule:
///  - start bound: s_j <= (prefix volume before j) / ((1-alpha) M),
///  - busy prefix: while job j waits, every machine keeps total demand
///    above 1 - alpha,
///  - monotone residual: min(usage, 1-alpha) never increases over time on
///    the machine that received a job.
struct WsvfInvariantReport {
    enum class Kind { StartBound, BusyPrefix, MonotoneResidual };

    struct Violation {
        Kind kind;
        std::size_t job;   // job being placed when the check failed
        int machine;       // machine inspected (-1 for StartBound)
        double time;       // witness time
        double value;      // offending value (start or usage)
        double limit;      // violated limit
    };

    struct StartSlack {
        std::size_t job;
        double start;
        double bound;
    };

    std::vector<StartSlack> start_bounds;  // one entry per job, placement order
    std::vector<Violation> violations;

    bool ok() const { return violations.empty(); }
};

namespace detail {

// Visits (begin, end, usage) segments of prof restricted to [0, limit),
// including implicit zero-usage stretches outside the recorded breakpoints.
template <class Fn>
void scan_segments(const CapacityProfile& prof, double limit, Fn fn) {
    if (limit <= 0.0) return;
    if (prof.empty()) {
        fn(0.0, limit, 0.0);
        return;
    }
    double first = prof.segment_begin(0);
    if (first > 0.0) fn(0.0, std::min(first, limit), 0.0);
    for (std::size_t k = 0; k < prof.segments(); ++k) {
        double b = prof.segment_begin(k);
        double e = prof.segment_end(k);
        if (b >= limit) return;
        fn(b, std::min(e, limit), prof.segment_usage(k));
    }
    double last = prof.segment_end(prof.segments() - 1);
    if (last < limit) fn(last, limit, 0.0);
}

}  // namespace detail

/// Replays the greedy run implied by the schedule and checks the invariants
/// above after every placement. Only schedules tagged "wsvf" are accepted.
inline WsvfInvariantReport verify_wsvf_invariants(const Instance& inst, const Schedule& sched) {
    if (sched.algorithm != "wsvf")
        throw NotWsvfSchedule("invariant verification applies to wsvf schedules, got '" +
                              sched.algorithm + "'");
    validate_schedule_structure(inst, sched);

    const double alpha = inst.max_demand();
    const double m = static_cast<double>(inst.machines);
    const double inv = std::numeric_limits<double>::infinity();
    PriorityOrder order = wsvf_order(inst);

    WsvfInvariantReport report;
    std::vector<CapacityProfile> prof(static_cast<std::size_t>(inst.machines));
    double prefix_volume = 0.0;

    for (std::size_t j : order.jobs) {
        const Assignment& a = sched.assignments[j];
        const Job& job = inst.jobs[j];

        double bound = alpha < 1.0 ? prefix_volume / ((1.0 - alpha) * m) : inv;
        report.start_bounds.push_back({j, a.start, bound});
        if (a.start > bound + kCapacityTol)
            report.violations.push_back(
                {WsvfInvariantReport::Kind::StartBound, j, -1, a.start, a.start, bound});

        // segments narrower than the tolerance are rounding slivers from
        // re-derived starts (file round trips); both scans skip them
        if (a.start > 0.0) {
            for (int i = 0; i < inst.machines; ++i)
                detail::scan_segments(prof[static_cast<std::size_t>(i)], a.start,
                                      [&](double b, double e, double usage) {
                                          if (usage <= 1.0 - alpha - kCapacityTol &&
                                              e - b > kCapacityTol)
                                              report.violations.push_back(
                                                  {WsvfInvariantReport::Kind::BusyPrefix, j, i, b,
                                                   usage, 1.0 - alpha});
                                      });
        }

        CapacityProfile& target = prof[static_cast<std::size_t>(a.machine)];
        target.add(a.start, job.p, job.d);
        double prev = inv;
        double horizon =
            target.empty() ? 0.0 : target.segment_end(target.segments() - 1) + 1.0;
        detail::scan_segments(target, horizon, [&](double b, double e, double usage) {
            if (e - b <= kCapacityTol) return;
            double level = std::min(usage, 1.0 - alpha);
            if (level > prev + kCapacityTol)
                report.violations.push_back(
                    {WsvfInvariantReport::Kind::MonotoneResidual, j, a.machine, b, level, prev});
            prev = level;
        });

        prefix_volume += job.volume();
    }
    return report;
}

/// Observed cost over a lower bound, with the applicable proven factor when
/// one exists. pass means no factor was exceeded (or none applied).
struct RatioReport {
    std::string algorithm;
    double cost = 0.0;
    double lower_bound = 0.0;
    bool oracle_based = false;  // lower bound is an exact optimum
    double ratio = 0.0;
    std::optional<double> factor;
    bool pass = true;
};

inline RatioReport ratio_certificate(const Instance& inst, const Schedule& sched,
                                     std::optional<double> oracle_cost = std::nullopt,
                                     std::optional<double> pack_epsilon = std::nullopt) {
    RatioReport cert;
    cert.algorithm = sched.algorithm;
    cert.cost = evaluate_cost(inst, sched);
    if (oracle_cost) {
        cert.lower_bound = *oracle_cost;
        cert.oracle_based = true;
    } else {
        BoundReport r = bound_report(inst);
        cert.lower_bound = r.combined_lb;
    }
    cert.ratio = cert.cost / cert.lower_bound;
    double alpha = inst.max_demand();
    if (sched.algorithm == "wsvf" && alpha < 1.0) cert.factor = theorem1_factor(alpha);
    if (sched.algorithm == "hybrid" && inst.machines >= 2)
        cert.factor = hybrid_bound_factor(inst.machines);
    if (sched.algorithm == "pack" && pack_epsilon)
        cert.factor = 12.0 * (1.0 + *pack_epsilon);
    cert.pass = !cert.factor || cert.ratio <= *cert.factor + kRatioTol;
    return cert;
}

}  // namespace capsched
