#pragma once

#include <tuple>
#include <vector>

#include <capsched/capsched.hpp>

namespace testutil {

/// Worked eight-job reference: two machines, mixed demands, known greedy
/// placement and cost. Used as a frozen fixture across the suite.
inline capsched::Instance reference_instance() {
    capsched::Instance inst;
    inst.machines = 2;
    inst.jobs = {
        {"j1", 4.0, 0.4, 8.0},  {"j2", 3.0, 0.4, 5.0}, {"j3", 2.0, 0.25, 1.5},
        {"j4", 1.0, 0.45, 1.0}, {"j5", 7.0, 0.4, 4.0}, {"j6", 7.0, 0.5, 4.0},
        {"j7", 5.0, 0.45, 2.0}, {"j8", 1.0, 0.28, 0.2},
    };
    return inst;
}

// Greedy placement of the reference instance: starts and machine indices in
// job order, total cost 135.2.
inline const std::vector<double> kReferenceStarts = {0, 0, 0, 0, 1, 2, 3, 0};
inline const std::vector<int> kReferenceMachines = {0, 0, 1, 1, 1, 1, 0, 1};
inline constexpr double kReferenceCost = 135.2;

inline capsched::Schedule reference_wsvf_schedule() {
    capsched::Schedule sched;
    sched.algorithm = "wsvf";
    for (std::size_t k = 0; k < kReferenceStarts.size(); ++k)
        sched.assignments.push_back({k, kReferenceMachines[k], kReferenceStarts[k]});
    return sched;
}

/// Quick builder: rows of (p, d, w), ids assigned j1, j2, ...
inline capsched::Instance make_instance(const std::vector<std::tuple<double, double, double>>& rows,
                                        int machines) {
    capsched::Instance inst;
    inst.machines = machines;
    std::size_t k = 0;
    for (const auto& [p, d, w] : rows)
        inst.jobs.push_back({"j" + std::to_string(++k), p, d, w});
    return inst;
}

/// Exact 0/1 knapsack by exhaustive enumeration; returns the best weight
/// over subsets whose volume fits the budget.
inline double knapsack_brute_force(const std::vector<capsched::KnapsackItem>& items,
                                   double budget) {
    double best = 0.0;
    const std::size_t n = items.size();
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
        double vol = 0.0, weight = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            if (mask & (std::size_t{1} << i)) {
                vol += items[i].volume;
                weight += items[i].weight;
            }
        if (vol <= budget && weight > best) best = weight;
    }
    return best;
}

}  // namespace testutil
