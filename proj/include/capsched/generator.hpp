#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <string>

#include "core.hpp"

namespace capsched {

enum class DemandDistribution { Uniform, Bimodal };

struct GeneratorConfig {
    int n = 8;
    int machines = 2;
    double alpha_max = 1.0;                    // demands drawn from (0, alpha_max]
    std::array<double, 2> p_range{1.0, 10.0};  // inclusive
    std::array<double, 2> w_range{0.5, 5.0};
    std::uint64_t seed = 0;
    DemandDistribution distribution = DemandDistribution::Uniform;
    bool integer_p = false;  // draw durations from the integers in p_range
};

namespace detail {

// Engine output mapped to doubles by hand so streams are identical across
// standard libraries.
struct Rng {
    std::mt19937_64 eng;

    explicit Rng(std::uint64_t seed) : eng(seed) {}

    double unit() {  // [0, 1)
        return static_cast<double>(eng() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

    std::uint64_t below(std::uint64_t k) { return eng() % k; }
};

}  // namespace detail

/// Deterministic instance sampler: durations and weights uniform over their
/// ranges, demands uniform over (0, alpha_max] or bimodal (half the mass in
/// (0, 1/2], half in (1/2, alpha_max]). Every value is rounded to the
/// serialization precision before it enters the instance.
inline Instance generate_instance(const GeneratorConfig& cfg) {
    if (cfg.n < 1) throw ConfigError("generator needs n >= 1");
    if (cfg.machines < 1) throw ConfigError("generator needs machines >= 1");
    if (!(cfg.alpha_max > 0.0) || cfg.alpha_max > 1.0)
        throw ConfigError("alpha_max must be in (0,1]");
    if (!(cfg.p_range[0] >= 1.0) || cfg.p_range[0] > cfg.p_range[1])
        throw ConfigError("duration range must satisfy 1 <= lo <= hi");
    if (!(cfg.w_range[0] > 0.0) || cfg.w_range[0] > cfg.w_range[1])
        throw ConfigError("weight range must satisfy 0 < lo <= hi");
    if (cfg.distribution == DemandDistribution::Bimodal && cfg.alpha_max <= 0.5)
        throw ConfigError("bimodal demands need alpha_max > 1/2");

    detail::Rng rng(cfg.seed);
    Instance inst;
    inst.machines = cfg.machines;
    inst.jobs.reserve(static_cast<std::size_t>(cfg.n));
    for (int k = 0; k < cfg.n; ++k) {
        Job job;
        job.id = "j" + std::to_string(k + 1);
        if (cfg.integer_p) {
            auto lo = static_cast<std::uint64_t>(cfg.p_range[0]);
            auto hi = static_cast<std::uint64_t>(cfg.p_range[1]);
            job.p = static_cast<double>(lo + rng.below(hi - lo + 1));
        } else {
            job.p = round12(rng.uniform(cfg.p_range[0], cfg.p_range[1]));
        }
        if (cfg.distribution == DemandDistribution::Uniform) {
            job.d = round12(cfg.alpha_max * (1.0 - rng.unit()));  // (0, alpha_max]
        } else {
            bool high = rng.below(2) == 1;
            job.d = high ? round12(0.5 + (cfg.alpha_max - 0.5) * (1.0 - rng.unit()))
                         : round12(0.5 * (1.0 - rng.unit()));
        }
        job.w = round12(rng.uniform(cfg.w_range[0], cfg.w_range[1]));
        inst.jobs.push_back(std::move(job));
    }
    return validate_instance(std::move(inst));
}

}  // namespace capsched
