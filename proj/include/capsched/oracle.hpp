#pragma once

#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <vector>

#include "core.hpp"
#include "profile.hpp"
#include "schedulers.hpp"

namespace capsched {

struct OracleLimits {
    int max_jobs = 7;
    double max_time_budget = 60.0;  // seconds
    bool require_integer_p = true;  // enforced by the grid check only
};

struct OracleResult {
    Schedule schedule;
    double cost = 0.0;
    bool optimal = false;  // false when the time budget expired first
    std::uint64_t nodes = 0;
};

namespace detail {

struct OracleSearch {
    const Instance& inst;
    int machines;
    double deadline_cost;  // incumbent cost
    std::vector<Assignment> best;
    std::vector<Assignment> current;
    std::vector<char> placed;
    std::vector<std::vector<std::size_t>> on_machine;
    CapacityProfile scratch;
    double remaining_wp;  // sum of w*p over unplaced jobs
    std::uint64_t nodes = 0;
    bool timed_out = false;
    std::chrono::steady_clock::time_point deadline;

    explicit OracleSearch(const Instance& i, int m)
        : inst(i),
          machines(m),
          deadline_cost(0.0),
          current(i.n()),
          placed(i.n(), 0),
          on_machine(static_cast<std::size_t>(m)),
          remaining_wp(0.0) {
        for (const Job& j : inst.jobs) remaining_wp += j.w * j.p;
    }

    double fit(int machine, double p, double d) {
        scratch.clear();
        for (std::size_t j : on_machine[static_cast<std::size_t>(machine)])
            scratch.add(current[j].start, inst.jobs[j].p, inst.jobs[j].d);
        return scratch.earliest_fit(p, d);
    }

    void dfs(std::size_t depth, double partial) {
        if ((nodes++ & 0xFFF) == 0 && std::chrono::steady_clock::now() >= deadline) {
            timed_out = true;
            return;
        }
        if (depth == inst.n()) {
            if (partial < deadline_cost) {
                deadline_cost = partial;
                best = current;
            }
            return;
        }
        if (partial + remaining_wp >= deadline_cost) return;

        for (std::size_t j = 0; j < inst.n(); ++j) {
            if (placed[j]) continue;
            const Job& job = inst.jobs[j];
            remaining_wp -= job.w * job.p;
            placed[j] = 1;
            bool tried_empty = false;
            for (int m = 0; m < machines; ++m) {
                // identical machines: one empty machine stands for all of them
                if (on_machine[static_cast<std::size_t>(m)].empty()) {
                    if (tried_empty) continue;
                    tried_empty = true;
                }
                double t = fit(m, job.p, job.d);
                double cost_j = job.w * (t + job.p);
                if (partial + cost_j + remaining_wp >= deadline_cost) continue;
                current[j] = {j, m, t};
                on_machine[static_cast<std::size_t>(m)].push_back(j);
                dfs(depth + 1, partial + cost_j);
                on_machine[static_cast<std::size_t>(m)].pop_back();
                if (timed_out) break;
            }
            placed[j] = 0;
            remaining_wp += job.w * job.p;
            if (timed_out) return;
        }
    }
};

}  // namespace detail

/// Exhaustive branch and bound over job orders and machine assignments, each
/// prefix placed at its earliest feasible start. Primed with the best greedy
/// schedule; prunes on (partial cost + remaining weighted durations). On
/// timeout the incumbent is returned with optimal = false.
inline OracleResult optimal_schedule(const Instance& inst, const OracleLimits& limits = {}) {
    if (inst.n() > static_cast<std::size_t>(limits.max_jobs))
        throw TooLarge("instance has " + std::to_string(inst.n()) + " jobs, oracle limit is " +
                       std::to_string(limits.max_jobs));
    if (inst.machines < 1) throw DomainError("oracle needs machines >= 1");

    Schedule seed = wsvf_schedule(inst);
    double seed_cost = evaluate_cost(inst, seed);
    for (const Schedule& alt :
         {wspt_schedule(inst), inst.machines >= 2 ? hybrid_schedule(inst) : wspt_schedule(inst)}) {
        double c = evaluate_cost(inst, alt);
        if (c < seed_cost) {
            seed = alt;
            seed_cost = c;
        }
    }

    detail::OracleSearch search(inst, inst.machines);
    search.deadline_cost = seed_cost;
    search.best = seed.assignments;
    search.deadline = std::chrono::steady_clock::now() +
                      std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                          std::chrono::duration<double>(limits.max_time_budget));
    search.dfs(0, 0.0);

    OracleResult result;
    result.schedule.algorithm = "oracle";
    result.schedule.assignments = search.best;
    result.cost = evaluate_cost(inst, result.schedule);
    result.optimal = !search.timed_out;
    result.nodes = search.nodes;
    return result;
}

/// Independent cross-check for tiny instances: enumerates every assignment of
/// integer start times in [0, total duration] and machine indices, keeping
/// the cheapest feasible combination. Start loops break early once the
/// partial cost plus remaining weighted durations reaches the incumbent.
inline double optimal_grid_check(const Instance& inst, const OracleLimits& limits = {}) {
    if (inst.n() > 5)
        throw TooLarge("grid check handles at most 5 jobs, got " + std::to_string(inst.n()));
    if (inst.machines > 2)
        throw TooLarge("grid check handles at most 2 machines, got " +
                       std::to_string(inst.machines));
    if (limits.require_integer_p)
        for (const Job& j : inst.jobs)
            if (j.p != std::floor(j.p))
                throw DomainError("grid check needs integer durations, job " + j.id + " has p = " +
                                  std::to_string(j.p));

    const std::size_t n = inst.n();
    const int horizon = static_cast<int>(std::llround(std::ceil(inst.total_duration())));
    std::vector<int> start(n, 0);
    std::vector<int> machine(n, 0);
    double best = std::numeric_limits<double>::infinity();

    double total_wp = 0.0;
    for (const Job& j : inst.jobs) total_wp += j.w * j.p;

    auto feasible_at = [&](std::size_t j, int m, int s) {
        // integer grid: demand on [t, t+1) is constant per unit slot
        for (int t = s; t < s + static_cast<int>(inst.jobs[j].p); ++t) {
            double load = inst.jobs[j].d;
            for (std::size_t k = 0; k < j; ++k) {
                if (machine[k] != m) continue;
                if (start[k] <= t && t < start[k] + static_cast<int>(inst.jobs[k].p))
                    load += inst.jobs[k].d;
            }
            if (load > 1.0 + kCapacityTol) return false;
        }
        return true;
    };

    auto rec = [&](auto&& self, std::size_t j, double partial, double rem_wp) -> void {
        if (j == n) {
            if (partial < best) best = partial;
            return;
        }
        const Job& job = inst.jobs[j];
        int top_machine = (j == 0) ? 1 : inst.machines;  // symmetry: pin job 0
        for (int m = 0; m < top_machine; ++m) {
            for (int s = 0; s <= horizon; ++s) {
                double cost_j = job.w * (s + job.p);
                if (partial + cost_j + (rem_wp - job.w * job.p) >= best) break;
                if (!feasible_at(j, m, s)) continue;
                start[j] = s;
                machine[j] = m;
                self(self, j + 1, partial + cost_j, rem_wp - job.w * job.p);
            }
        }
    };
    rec(rec, 0, 0.0, total_wp);
    return best;
}

}  // namespace capsched
