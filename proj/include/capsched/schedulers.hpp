#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <vector>

#include "core.hpp"
#include "profile.hpp"

namespace capsched {

/// Job indices in scheduling order together with the sort keys that produced
/// the order. Ties keep input order (stable sort).
struct PriorityOrder {
    std::vector<std::size_t> jobs;
    std::vector<double> keys;  // keys[k] belongs to jobs[k]
};

namespace detail {

template <class KeyFn>
PriorityOrder stable_order(const Instance& inst, KeyFn key) {
    PriorityOrder order;
    order.jobs.resize(inst.n());
    std::iota(order.jobs.begin(), order.jobs.end(), std::size_t{0});
    std::stable_sort(order.jobs.begin(), order.jobs.end(), [&](std::size_t a, std::size_t b) {
        return key(inst.jobs[a]) < key(inst.jobs[b]);
    });
    order.keys.reserve(inst.n());
    for (std::size_t j : order.jobs) order.keys.push_back(key(inst.jobs[j]));
    return order;
}

}  // namespace detail

/// Smallest volume-per-weight first: key v/w = p*d/w.
inline PriorityOrder wsvf_order(const Instance& inst) {
    return detail::stable_order(inst, [](const Job& j) { return j.volume() / j.w; });
}

/// Shortest weighted processing time: key p/w.
inline PriorityOrder wspt_order(const Instance& inst) {
    return detail::stable_order(inst, [](const Job& j) { return j.p / j.w; });
}

/// Greedy list scheduler: jobs in WSVF order, each placed at the earliest
/// feasible start over all machines, ties broken by lowest machine index.
inline Schedule wsvf_schedule(const Instance& inst, int machines) {
    if (machines < 1) throw InsufficientMachines("wsvf needs at least one machine");
    PriorityOrder order = wsvf_order(inst);
    std::vector<CapacityProfile> prof(static_cast<std::size_t>(machines));
    Schedule sched;
    sched.algorithm = "wsvf";
    sched.assignments.resize(inst.n());
    for (std::size_t j : order.jobs) {
        const Job& job = inst.jobs[j];
        double best_t = 0.0;
        int best_m = -1;
        for (int m = 0; m < machines; ++m) {
            double t = prof[static_cast<std::size_t>(m)].earliest_fit(job.p, job.d);
            if (best_m < 0 || t < best_t) {
                best_t = t;
                best_m = m;
            }
        }
        prof[static_cast<std::size_t>(best_m)].add(best_t, job.p, job.d);
        sched.assignments[j] = {j, best_m, best_t};
    }
    return sched;
}

inline Schedule wsvf_schedule(const Instance& inst) { return wsvf_schedule(inst, inst.machines); }

/// Classic weighted SPT with exclusive machine use: jobs in p/w order, each
/// appended to the machine that currently finishes first (ties by index).
/// Demands are ignored; jobs never overlap on a machine.
inline Schedule wspt_schedule(const Instance& inst, int machines) {
    if (machines < 1) throw InsufficientMachines("wspt needs at least one machine");
    PriorityOrder order = wspt_order(inst);
    std::vector<double> finish(static_cast<std::size_t>(machines), 0.0);
    Schedule sched;
    sched.algorithm = "wspt";
    sched.assignments.resize(inst.n());
    for (std::size_t j : order.jobs) {
        std::size_t m = 0;
        for (std::size_t i = 1; i < finish.size(); ++i)
            if (finish[i] < finish[m]) m = i;
        sched.assignments[j] = {j, static_cast<int>(m), finish[m]};
        finish[m] += inst.jobs[j].p;
    }
    return sched;
}

inline Schedule wspt_schedule(const Instance& inst) { return wspt_schedule(inst, inst.machines); }

/// Demand split used by the hybrid scheduler: low jobs (d <= 1/2) get
/// m_low = ceil(2(M-2)/3) + 1 machines, high jobs the remaining m_high.
struct JobSplit {
    std::vector<std::size_t> low;
    std::vector<std::size_t> high;
    int m_low = 0;
    int m_high = 0;
};

inline JobSplit split_jobs(const Instance& inst, int machines) {
    if (machines < 2) throw InsufficientMachines("hybrid split needs at least two machines");
    JobSplit split;
    for (std::size_t k = 0; k < inst.n(); ++k)
        (inst.jobs[k].d <= 0.5 ? split.low : split.high).push_back(k);
    int twice = 2 * (machines - 2);
    split.m_low = (twice + 2) / 3 + 1;  // ceil(2(M-2)/3) + 1
    split.m_high = machines - split.m_low;
    return split;
}

struct HybridOptions {
    // With one class empty the prescribed split leaves machines idle; the
    // rebalance switch hands all machines to the nonempty class.
    bool rebalance = false;
};

/// Two-class scheduler: WSVF for low-demand jobs on the first m_low machines,
/// WSPT for high-demand jobs on the remaining m_high.
inline Schedule hybrid_schedule(const Instance& inst, int machines, HybridOptions opts = {}) {
    JobSplit split = split_jobs(inst, machines);
    int m_low = split.m_low;
    int m_high = split.m_high;
    if (opts.rebalance) {
        if (split.high.empty()) {
            m_low = machines;
            m_high = 0;
        } else if (split.low.empty()) {
            m_low = 0;
            m_high = machines;
        }
    }

    Schedule sched;
    sched.algorithm = "hybrid";
    sched.assignments.resize(inst.n());

    auto run_class = [&](const std::vector<std::size_t>& members, int count, int base, bool wsvf) {
        if (members.empty()) return;
        Instance sub;
        sub.machines = count;
        sub.jobs.reserve(members.size());
        for (std::size_t j : members) sub.jobs.push_back(inst.jobs[j]);
        Schedule part = wsvf ? wsvf_schedule(sub, count) : wspt_schedule(sub, count);
        for (std::size_t k = 0; k < members.size(); ++k) {
            const Assignment& a = part.assignments[k];
            sched.assignments[members[k]] = {members[k], base + a.machine, a.start};
        }
    };

    run_class(split.low, m_low, 0, true);
    run_class(split.high, m_high, m_low, false);
    return sched;
}

inline Schedule hybrid_schedule(const Instance& inst, HybridOptions opts = {}) {
    return hybrid_schedule(inst, inst.machines, opts);
}

}  // namespace capsched
