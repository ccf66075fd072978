#pragma once

#include <cstddef>
#include <vector>

#include "core.hpp"
#include "schedulers.hpp"

namespace capsched {

/// Volume-preserving compression: job (p, d, w) becomes (p*d, 1, w), listed
/// in WSVF order of the source instance. With unit demands the WSVF key of a
/// compressed job equals its p/w, so the stored order is simultaneously the
/// WSVF and WSPT order of the compressed instance.
struct CompressedInstance {
    std::vector<std::size_t> source_order;  // original job indices, WSVF order
    std::vector<double> p_hat;              // p*d of the source job
    std::vector<double> weights;
    std::vector<std::string> ids;

    std::size_t n() const { return p_hat.size(); }

    /// Materializes the compressed jobs as a regular instance. Durations may
    /// drop below one; such instances are built directly and never pass
    /// through parse validation.
    Instance as_instance(int machines) const {
        Instance inst;
        inst.machines = machines;
        inst.jobs.reserve(n());
        for (std::size_t k = 0; k < n(); ++k)
            inst.jobs.push_back({ids[k], p_hat[k], 1.0, weights[k]});
        return inst;
    }
};

inline CompressedInstance compress(const Instance& inst) {
    PriorityOrder order = wsvf_order(inst);
    CompressedInstance out;
    out.source_order = order.jobs;
    out.p_hat.reserve(inst.n());
    out.weights.reserve(inst.n());
    out.ids.reserve(inst.n());
    for (std::size_t j : order.jobs) {
        out.p_hat.push_back(inst.jobs[j].volume());
        out.weights.push_back(inst.jobs[j].w);
        out.ids.push_back(inst.jobs[j].id);
    }
    return out;
}

/// Optimal single-machine cost of the compressed instance: jobs back to back
/// in the stored order, cost = sum_j w_j * (prefix sum of p_hat through j).
inline double smith_cost(const CompressedInstance& comp) {
    double prefix = 0.0;
    double cost = 0.0;
    for (std::size_t k = 0; k < comp.n(); ++k) {
        prefix += comp.p_hat[k];
        cost += comp.weights[k] * prefix;
    }
    return cost;
}

}  // namespace capsched
