#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "core.hpp"
#include "knapsack.hpp"
#include "strip_pack.hpp"

namespace capsched {

/// One doubling round: the knapsack selection at budget 2^level and the strip
/// placement of its not-yet-scheduled jobs inside the round's time interval.
/// selection.selected is rebased onto job indices (not item positions).
struct PackIteration {
    int level = 0;
    double budget = 1.0;                    // 2^level
    KnapsackSelection selection;            // over every p-eligible job
    std::vector<std::size_t> newly_packed;  // selection minus already scheduled
    StripPlacement placement;               // shelf layout of the new jobs
    double interval_begin = 0.0;
    double interval_end = 0.0;
};

/// Schedule plus the per-round audit trail needed to evaluate the cost
/// accounting of the doubling scheme.
struct PackResult {
    Schedule schedule;
    double epsilon = 0.1;
    int level_max = 0;          // ceil(log2(max(total volume, max p/(1+eps), 1)))
    double total_weight = 0.0;  // W
    std::vector<PackIteration> iterations;

    // 3(1+eps) * sum over rounds of (2^(l+1) - 1) * (W - W_{l-1}) with
    // W_{-1} = 0. Holds by construction: jobs first scheduled in round l have
    // weight at most W - W_{l-1} and complete by 3(1+eps)(2^(l+1) - 1).
    double cost_upper_bound() const {
        double prev_w = 0.0;
        double sum = 0.0;
        for (const PackIteration& it : iterations) {
            sum += (2.0 * it.budget - 1.0) * (total_weight - prev_w);
            prev_w = it.selection.total_weight;
        }
        return 3.0 * (1.0 + epsilon) * sum;
    }

    // W + sum over rounds of 2^l * (W - W_l). Assumes every p >= 1 (no weight
    // can finish before time one).
    double optimum_lower_bound_stated() const {
        double sum = total_weight;
        for (const PackIteration& it : iterations)
            sum += it.budget * (total_weight - it.selection.total_weight);
        return sum;
    }

    // Index-shifted variant: W + sum of 2^l * (W - W_{l+1}). Weight finished
    // by time 2^(l+1) fits a volume budget of 2^(l+1), so the unfinished
    // weight on [2^l, 2^(l+1)) is at least W - W_{l+1}. Assumes every p >= 1.
    double optimum_lower_bound_sound() const {
        double sum = total_weight;
        for (std::size_t k = 0; k + 1 < iterations.size(); ++k)
            sum += iterations[k].budget *
                   (total_weight - iterations[k + 1].selection.total_weight);
        return sum;
    }
};

/// Single-machine doubling scheduler. Round l filters jobs with
/// p <= (1+eps) * 2^l, picks a maximum-weight selection with the relaxed
/// knapsack at budget 2^l, and shelf-packs the selection's new jobs into
/// [3(1+eps)(2^l - 1), 3(1+eps)(2^(l+1) - 1)). The strip width bound
/// 2 * volume + max p <= 3(1+eps) 2^l keeps every round inside its interval.
inline PackResult pack_and_schedule(const Instance& inst, double eps = 0.1) {
    if (inst.machines != 1)
        throw NotSingleMachine("pack scheduling is defined for one machine, got " +
                               std::to_string(inst.machines));
    if (!(eps > 0.0)) throw DomainError("pack eps must be > 0");

    PackResult result;
    result.epsilon = eps;
    result.schedule.algorithm = "pack";
    result.schedule.assignments.resize(inst.n());

    double total_volume = 0.0;
    double max_p = 0.0;
    for (const Job& j : inst.jobs) {
        result.total_weight += j.w;
        total_volume += j.volume();
        max_p = std::max(max_p, j.p);
    }
    double scale = std::max({total_volume, max_p / (1.0 + eps), 1.0});
    result.level_max = scale <= 1.0 ? 0 : static_cast<int>(std::ceil(std::log2(scale)));

    std::vector<char> scheduled(inst.n(), 0);
    std::size_t remaining = inst.n();
    for (int level = 0; level <= result.level_max || remaining > 0; ++level) {
        PackIteration round;
        round.level = level;
        round.budget = std::ldexp(1.0, level);
        round.selection.budget = round.budget;
        round.interval_begin = 3.0 * (1.0 + eps) * (round.budget - 1.0);
        round.interval_end = 3.0 * (1.0 + eps) * (2.0 * round.budget - 1.0);

        std::vector<std::size_t> candidates;
        std::vector<KnapsackItem> items;
        for (std::size_t k = 0; k < inst.n(); ++k) {
            if (inst.jobs[k].p <= (1.0 + eps) * round.budget) {
                candidates.push_back(k);
                items.push_back({inst.jobs[k].volume(), inst.jobs[k].w});
            }
        }
        if (!candidates.empty()) {
            KnapsackSelection sel = knapsack_augmented(items, round.budget, eps);
            std::vector<StripItem> fresh;
            for (std::size_t& idx : sel.selected) {
                idx = candidates[idx];  // rebase item position onto job index
                if (!scheduled[idx])
                    fresh.push_back({idx, inst.jobs[idx].p, inst.jobs[idx].d});
            }
            round.selection = std::move(sel);
            round.placement = strip_pack(fresh, eps, round.budget);
            for (const StripRect& r : round.placement.rects) {
                result.schedule.assignments[r.job] = {r.job, 0, round.interval_begin + r.time_offset};
                scheduled[r.job] = 1;
                --remaining;
                round.newly_packed.push_back(r.job);
            }
        }
        result.iterations.push_back(round);
        if (level > result.level_max + 4)
            throw Error("doubling rounds failed to cover every job");
    }
    return result;
}

}  // namespace capsched
