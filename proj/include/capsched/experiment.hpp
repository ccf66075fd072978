#pragma once

#include <atomic>
#include <cstddef>
#include <cstdio>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "bounds.hpp"
#include "core.hpp"
#include "generator.hpp"
#include "json_io.hpp"
#include "oracle.hpp"
#include "pack_schedule.hpp"
#include "profile.hpp"
#include "schedulers.hpp"
#include "version.hpp"

namespace capsched {

struct SuiteEntry {
    GeneratorConfig config;
    int count = 1;  // instances, seeds config.seed .. config.seed + count - 1
};

struct SuiteConfig {
    std::vector<SuiteEntry> entries;
    std::vector<std::string> algorithms;  // wsvf | wspt | hybrid | pack
    bool oracle = false;                  // lower-bound rows against the exact optimum
    double epsilon = 0.1;                 // pack accuracy
    OracleLimits limits;
};

/// One (instance, algorithm) measurement.
struct RatioRow {
    std::size_t instance_index = 0;
    std::uint64_t seed = 0;
    int n = 0;
    int machines = 0;
    std::string algorithm;
    double cost = 0.0;
    double lower_bound = 0.0;
    bool oracle_based = false;
    double ratio = 0.0;
    std::optional<double> factor;
    bool pass = true;      // ratio <= factor + tolerance (or no factor applies)
    bool feasible = true;
    std::string error;     // nonempty when the run failed

    bool failed() const { return !error.empty(); }
};

struct AlgorithmSummary {
    std::string algorithm;
    std::size_t runs = 0;
    std::size_t errors = 0;
    double mean_ratio = 0.0;
    double max_ratio = 0.0;
    std::size_t violations = 0;  // rows with pass == false
    std::size_t infeasible = 0;
};

struct ExperimentReport {
    std::vector<RatioRow> rows;  // ordered by (instance, algorithm)
    std::vector<AlgorithmSummary> summary;
    bool any_violation = false;
    bool any_infeasible = false;
    bool any_error = false;
};

inline SuiteConfig suite_from_json(const json& doc) {
    if (!doc.is_object() || !doc.contains("entries") || !doc.contains("algorithms"))
        throw ParseError("suite document needs 'entries' and 'algorithms'");
    SuiteConfig suite;
    for (const json& a : doc["algorithms"]) {
        std::string name = a.get<std::string>();
        if (name != "wsvf" && name != "wspt" && name != "hybrid" && name != "pack")
            throw ConfigError("unknown algorithm in suite: " + name);
        suite.algorithms.push_back(name);
    }
    if (doc.contains("oracle")) suite.oracle = doc["oracle"].get<bool>();
    if (doc.contains("epsilon")) suite.epsilon = doc["epsilon"].get<double>();
    if (doc.contains("oracle_max_jobs")) suite.limits.max_jobs = doc["oracle_max_jobs"].get<int>();
    if (doc.contains("oracle_timeout"))
        suite.limits.max_time_budget = doc["oracle_timeout"].get<double>();
    for (const json& e : doc["entries"]) {
        SuiteEntry entry;
        if (e.contains("count")) entry.count = e["count"].get<int>();
        if (entry.count < 1) throw ConfigError("entry count must be >= 1");
        GeneratorConfig& g = entry.config;
        if (e.contains("n")) g.n = e["n"].get<int>();
        if (e.contains("machines")) g.machines = e["machines"].get<int>();
        if (e.contains("alpha_max")) g.alpha_max = e["alpha_max"].get<double>();
        if (e.contains("p_range")) g.p_range = {e["p_range"][0].get<double>(), e["p_range"][1].get<double>()};
        if (e.contains("w_range")) g.w_range = {e["w_range"][0].get<double>(), e["w_range"][1].get<double>()};
        if (e.contains("seed")) g.seed = e["seed"].get<std::uint64_t>();
        if (e.contains("integer_p")) g.integer_p = e["integer_p"].get<bool>();
        if (e.contains("distribution")) {
            std::string d = e["distribution"].get<std::string>();
            if (d == "uniform")
                g.distribution = DemandDistribution::Uniform;
            else if (d == "bimodal")
                g.distribution = DemandDistribution::Bimodal;
            else
                throw ConfigError("unknown distribution: " + d);
        }
        suite.entries.push_back(entry);
    }
    return suite;
}

namespace detail {

inline Schedule run_algorithm(const Instance& inst, const std::string& name, double eps) {
    if (name == "wsvf") return wsvf_schedule(inst);
    if (name == "wspt") return wspt_schedule(inst);
    if (name == "hybrid") return hybrid_schedule(inst);
    if (name == "pack") return pack_and_schedule(inst, eps).schedule;
    throw ConfigError("unknown algorithm: " + name);
}

}  // namespace detail

/// Expands the suite, runs every algorithm on every instance, and grades each
/// run against the best available lower bound. Work is spread over `parallel`
/// threads; rows come back in deterministic (instance, algorithm) order.
inline ExperimentReport run_experiment(const SuiteConfig& suite, int parallel = 1) {
    std::vector<GeneratorConfig> tasks;
    for (const SuiteEntry& entry : suite.entries) {
        for (int k = 0; k < entry.count; ++k) {
            GeneratorConfig cfg = entry.config;
            cfg.seed = entry.config.seed + static_cast<std::uint64_t>(k);
            tasks.push_back(cfg);
        }
    }

    const std::size_t algs = suite.algorithms.size();
    ExperimentReport report;
    report.rows.resize(tasks.size() * algs);

    auto run_task = [&](std::size_t t) {
        Instance inst;
        std::string gen_error;
        try {
            inst = generate_instance(tasks[t]);
        } catch (const std::exception& e) {
            gen_error = e.what();
        }
        std::optional<double> oracle_cost;
        std::string oracle_error;
        if (gen_error.empty() && suite.oracle) {
            try {
                OracleResult res = optimal_schedule(inst, suite.limits);
                if (res.optimal) oracle_cost = res.cost;
            } catch (const std::exception& e) {
                oracle_error = e.what();
            }
        }
        for (std::size_t a = 0; a < algs; ++a) {
            RatioRow& row = report.rows[t * algs + a];
            row.instance_index = t;
            row.seed = tasks[t].seed;
            row.n = tasks[t].n;
            row.machines = tasks[t].machines;
            row.algorithm = suite.algorithms[a];
            if (!gen_error.empty()) {
                row.error = gen_error;
                continue;
            }
            if (!oracle_error.empty()) {
                row.error = "oracle: " + oracle_error;
                continue;
            }
            try {
                Schedule sched = detail::run_algorithm(inst, row.algorithm, suite.epsilon);
                row.feasible = check_feasibility(inst, sched).ok();
                std::optional<double> eps;
                if (row.algorithm == "pack") eps = suite.epsilon;
                RatioReport cert = ratio_certificate(inst, sched, oracle_cost, eps);
                row.cost = cert.cost;
                row.lower_bound = cert.lower_bound;
                row.oracle_based = cert.oracle_based;
                row.ratio = cert.ratio;
                row.factor = cert.factor;
                row.pass = cert.pass;
            } catch (const std::exception& e) {
                row.error = e.what();
            }
        }
    };

    if (parallel <= 1 || tasks.size() <= 1) {
        for (std::size_t t = 0; t < tasks.size(); ++t) run_task(t);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(parallel), tasks.size());
        for (std::size_t w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (std::size_t t = next.fetch_add(1); t < tasks.size(); t = next.fetch_add(1))
                    run_task(t);
            });
        for (std::thread& th : pool) th.join();
    }

    for (const std::string& name : suite.algorithms) {
        AlgorithmSummary s;
        s.algorithm = name;
        for (const RatioRow& row : report.rows) {
            if (row.algorithm != name) continue;
            s.runs += 1;
            if (row.failed()) {
                s.errors += 1;
                report.any_error = true;
                continue;
            }
            s.mean_ratio += row.ratio;
            s.max_ratio = std::max(s.max_ratio, row.ratio);
            if (!row.pass) {
                s.violations += 1;
                report.any_violation = true;
            }
            if (!row.feasible) {
                s.infeasible += 1;
                report.any_infeasible = true;
            }
        }
        if (s.runs > s.errors) s.mean_ratio /= static_cast<double>(s.runs - s.errors);
        report.summary.push_back(s);
    }
    return report;
}

inline json report_to_json(const ExperimentReport& report, const json& config_echo) {
    json doc;
    doc["version"] = kVersion;
    doc["config"] = config_echo;
    json rows = json::array();
    for (const RatioRow& row : report.rows) {
        json r;
        r["instance"] = row.instance_index;
        r["seed"] = row.seed;
        r["n"] = row.n;
        r["machines"] = row.machines;
        r["algorithm"] = row.algorithm;
        if (row.failed()) {
            r["error"] = row.error;
        } else {
            r["cost"] = round12(row.cost);
            r["lower_bound"] = round12(row.lower_bound);
            r["oracle_based"] = row.oracle_based;
            r["ratio"] = round12(row.ratio);
            if (row.factor) r["factor"] = round12(*row.factor);
            r["pass"] = row.pass;
            r["feasible"] = row.feasible;
        }
        rows.push_back(std::move(r));
    }
    doc["rows"] = rows;
    json summary = json::array();
    for (const AlgorithmSummary& s : report.summary) {
        summary.push_back({{"algorithm", s.algorithm},
                           {"runs", s.runs},
                           {"errors", s.errors},
                           {"mean_ratio", round12(s.mean_ratio)},
                           {"max_ratio", round12(s.max_ratio)},
                           {"violations", s.violations},
                           {"infeasible", s.infeasible}});
    }
    doc["summary"] = summary;
    return doc;
}

inline std::string format_table(const ExperimentReport& report) {
    char line[160];
    std::string out;
    std::snprintf(line, sizeof line, "%-10s %8s %8s %12s %12s %11s %11s\n", "algorithm", "runs",
                  "errors", "mean_ratio", "max_ratio", "violations", "infeasible");
    out += line;
    for (const AlgorithmSummary& s : report.summary) {
        std::snprintf(line, sizeof line, "%-10s %8zu %8zu %12.4f %12.4f %11zu %11zu\n",
                      s.algorithm.c_str(), s.runs, s.errors, s.mean_ratio, s.max_ratio,
                      s.violations, s.infeasible);
        out += line;
    }
    return out;
}

}  // namespace capsched
