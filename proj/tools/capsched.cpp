// Command line front end for the scheduling toolkit.
//
// Exit codes: 0 success, 1 usage or input errors, 2 infeasibility or a
// violated schedule invariant, 3 a proven ratio bound exceeded.

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <capsched/capsched.hpp>

namespace {

using namespace capsched;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInfeasible = 2;
constexpr int kExitRatio = 3;

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty())
        std::cout << text;
    else
        write_file(out_path, text);
}

std::optional<std::uint64_t> env_seed() {
    const char* raw = std::getenv("CAPSCHED_SEED");
    if (!raw || !*raw) return std::nullopt;
    char* end = nullptr;
    unsigned long long v = std::strtoull(raw, &end, 10);
    if (end == raw || *end != '\0')
        throw ConfigError(std::string("CAPSCHED_SEED is not an integer: ") + raw);
    return static_cast<std::uint64_t>(v);
}

struct GenerateArgs {
    GeneratorConfig cfg;
    std::string distribution = "uniform";
    std::vector<double> p_range{1.0, 10.0};
    std::vector<double> w_range{0.5, 5.0};
    std::string output;
};

int cmd_generate(GenerateArgs& args) {
    args.cfg.p_range = {args.p_range[0], args.p_range[1]};
    args.cfg.w_range = {args.w_range[0], args.w_range[1]};
    if (args.distribution == "uniform")
        args.cfg.distribution = DemandDistribution::Uniform;
    else if (args.distribution == "bimodal")
        args.cfg.distribution = DemandDistribution::Bimodal;
    else
        throw ConfigError("unknown distribution: " + args.distribution);
    if (auto seed = env_seed()) args.cfg.seed = *seed;
    Instance inst = generate_instance(args.cfg);
    emit(dump_json(instance_to_json(inst)), args.output);
    return kExitOk;
}

struct RunArgs {
    std::string instance_path;
    std::string alg = "wsvf";
    int machines = 0;  // 0: use the instance's count
    double epsilon = 0.1;
    bool rebalance = false;
    std::string output;
};

int cmd_run(RunArgs& args) {
    Instance inst = load_instance_file(args.instance_path);
    if (args.machines > 0) inst.machines = args.machines;

    Schedule sched;
    ScheduleWriteOptions opts;
    PackResult pack;
    if (args.alg == "wsvf") {
        sched = wsvf_schedule(inst);
    } else if (args.alg == "wspt") {
        sched = wspt_schedule(inst);
    } else if (args.alg == "hybrid") {
        sched = hybrid_schedule(inst, HybridOptions{args.rebalance});
    } else if (args.alg == "pack") {
        if (!(args.epsilon > 0.0) || args.epsilon > 1.0)
            throw ConfigError("--epsilon must be in (0,1]");
        pack = pack_and_schedule(inst, args.epsilon);
        sched = pack.schedule;
        opts.pack = &pack;
    } else {
        throw ConfigError("unknown algorithm: " + args.alg);
    }

    FeasibilityReport feas = check_feasibility(inst, sched);
    if (!feas.ok()) {
        std::cerr << "infeasible schedule produced (" << feas.violations.size()
                  << " overloaded segments)\n";
        return kExitInfeasible;
    }
    emit(dump_json(schedule_to_json(inst, sched, opts)), args.output);
    return kExitOk;
}

struct BoundsArgs {
    std::string instance_path;
    int machines = 0;
    std::string format = "json";
    std::string output;
};

int cmd_bounds(BoundsArgs& args) {
    Instance inst = load_instance_file(args.instance_path);
    if (args.machines > 0) inst.machines = args.machines;
    BoundReport r = bound_report(inst);
    if (args.format == "table") {
        char line[128];
        std::string out;
        auto put = [&](const char* key, double v) {
            std::snprintf(line, sizeof line, "%-14s %.6f\n", key, v);
            out += line;
        };
        std::snprintf(line, sizeof line, "%-14s %d\n", "machines", r.machines);
        out += line;
        put("alpha", r.alpha);
        put("cn", r.cn);
        put("c1_hat", r.c1_hat);
        put("eastman_lb", r.eastman_lb);
        put("eastman_sharp", r.eastman_sharp);
        put("combined_lb", r.combined_lb);
        if (r.theorem1_factor) put("theorem1_factor", *r.theorem1_factor);
        if (r.hybrid_factor) put("hybrid_factor", *r.hybrid_factor);
        emit(out, args.output);
    } else {
        json doc;
        doc["version"] = kVersion;
        doc["machines"] = r.machines;
        doc["alpha"] = round12(r.alpha);
        doc["cn"] = round12(r.cn);
        doc["c1_hat"] = round12(r.c1_hat);
        doc["eastman_lb"] = round12(r.eastman_lb);
        doc["eastman_sharp"] = round12(r.eastman_sharp);
        doc["combined_lb"] = round12(r.combined_lb);
        if (r.theorem1_factor) doc["theorem1_factor"] = round12(*r.theorem1_factor);
        if (r.hybrid_factor) doc["hybrid_factor"] = round12(*r.hybrid_factor);
        emit(dump_json(doc), args.output);
    }
    return kExitOk;
}

struct VerifyArgs {
    std::string schedule_path;
    std::string format = "table";
};

int cmd_verify(VerifyArgs& args) {
    ScheduleDocument doc = load_schedule_file(args.schedule_path);
    double cost = evaluate_cost(doc.instance, doc.schedule);
    bool cost_ok = std::abs(cost - doc.cost) <= 1e-6 * std::max(1.0, std::abs(cost));
    FeasibilityReport feas = check_feasibility(doc.instance, doc.schedule);

    std::size_t invariant_violations = 0;
    std::string invariant_note = "not applicable";
    if (doc.schedule.algorithm == "wsvf") {
        WsvfInvariantReport inv = verify_wsvf_invariants(doc.instance, doc.schedule);
        invariant_violations = inv.violations.size();
        invariant_note = inv.ok() ? "ok" : "violated";
    }

    bool ok = cost_ok && feas.ok() && invariant_violations == 0;
    if (args.format == "json") {
        json out;
        out["cost_recorded"] = round12(doc.cost);
        out["cost_recomputed"] = round12(cost);
        out["cost_matches"] = cost_ok;
        out["feasible"] = feas.ok();
        out["capacity_violations"] = feas.violations.size();
        out["runtime_invariants"] = invariant_note;
        out["ok"] = ok;
        std::cout << dump_json(out);
    } else {
        std::printf("cost        %s (recorded %.6f, recomputed %.6f)\n",
                    cost_ok ? "ok" : "MISMATCH", doc.cost, cost);
        std::printf("capacity    %s (%zu overloaded segments)\n", feas.ok() ? "ok" : "VIOLATED",
                    feas.violations.size());
        for (const FeasibilityViolation& v : feas.violations)
            std::printf("  machine %d overloaded on [%.6f, %.6f): demand %.6f\n", v.machine,
                        v.begin, v.end, v.demand);
        std::printf("invariants  %s\n", invariant_note.c_str());
    }
    return ok ? kExitOk : kExitInfeasible;
}

struct OracleArgs {
    std::string instance_path;
    int max_n = 7;
    double timeout = 60.0;
    std::string output;
};

int cmd_oracle(OracleArgs& args) {
    Instance inst = load_instance_file(args.instance_path);
    OracleLimits limits;
    limits.max_jobs = args.max_n;
    limits.max_time_budget = args.timeout;
    OracleResult res = optimal_schedule(inst, limits);
    ScheduleWriteOptions opts;
    opts.optimal = res.optimal;
    emit(dump_json(schedule_to_json(inst, res.schedule, opts)), args.output);
    return kExitOk;
}

struct GanttArgs {
    std::string schedule_path;
    std::string output;
};

int cmd_gantt(GanttArgs& args) {
    ScheduleDocument doc = load_schedule_file(args.schedule_path);
    GanttOptions opts;
    opts.iterations = doc.iterations;
    emit(render_gantt(doc.instance, doc.schedule, opts), args.output);
    return kExitOk;
}

struct BenchArgs {
    std::string suite_path;
    int parallel = 1;
    std::string format = "table";
    std::string output;
};

int cmd_bench(BenchArgs& args) {
    json config = parse_json(read_file(args.suite_path));
    SuiteConfig suite = suite_from_json(config);
    if (auto seed = env_seed())
        for (SuiteEntry& entry : suite.entries) entry.config.seed = *seed;
    ExperimentReport report = run_experiment(suite, args.parallel);
    if (args.format == "json")
        emit(dump_json(report_to_json(report, config)), args.output);
    else
        emit("capsched " + std::string(kVersion) + "\n" + format_table(report), args.output);
    if (report.any_violation) return kExitRatio;
    if (report.any_infeasible) return kExitInfeasible;
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"capacitated parallel machine scheduling toolkit"};
    app.require_subcommand(1);

    GenerateArgs gen;
    CLI::App* generate = app.add_subcommand("generate", "sample a random instance");
    generate->add_option("--n", gen.cfg.n, "number of jobs");
    generate->add_option("--machines", gen.cfg.machines, "number of machines");
    generate->add_option("--alpha-max", gen.cfg.alpha_max, "demand upper bound in (0,1]");
    generate->add_option("--p-range", gen.p_range, "duration range lo hi")->expected(2);
    generate->add_option("--w-range", gen.w_range, "weight range lo hi")->expected(2);
    generate->add_option("--seed", gen.cfg.seed, "rng seed (CAPSCHED_SEED overrides)");
    generate->add_option("--distribution", gen.distribution, "uniform | bimodal");
    generate->add_flag("--integer-p", gen.cfg.integer_p, "integer durations");
    generate->add_option("-o,--output", gen.output, "output path (default stdout)");

    RunArgs run;
    CLI::App* runc = app.add_subcommand("run", "schedule an instance");
    runc->add_option("instance", run.instance_path, "instance JSON path")->required();
    runc->add_option("--alg", run.alg, "wsvf | wspt | hybrid | pack");
    runc->add_option("--machines", run.machines, "override the instance's machine count");
    runc->add_option("--epsilon", run.epsilon, "pack accuracy in (0,1]");
    runc->add_flag("--rebalance", run.rebalance, "hybrid: give idle machines to the other class");
    runc->add_option("-o,--output", run.output, "output path (default stdout)");

    BoundsArgs bounds;
    CLI::App* boundsc = app.add_subcommand("bounds", "lower bounds and factors");
    boundsc->add_option("instance", bounds.instance_path, "instance JSON path")->required();
    boundsc->add_option("--machines", bounds.machines, "override the instance's machine count");
    boundsc->add_option("--format", bounds.format, "json | table");
    boundsc->add_option("-o,--output", bounds.output, "output path (default stdout)");

    VerifyArgs verify;
    CLI::App* verifyc = app.add_subcommand("verify", "check a schedule file");
    verifyc->add_option("schedule", verify.schedule_path, "schedule JSON path")->required();
    verifyc->add_option("--format", verify.format, "json | table");

    OracleArgs oracle;
    CLI::App* oraclec = app.add_subcommand("oracle", "exact optimum for small instances");
    oraclec->add_option("instance", oracle.instance_path, "instance JSON path")->required();
    oraclec->add_option("--max-n", oracle.max_n, "job count limit");
    oraclec->add_option("--timeout", oracle.timeout, "time budget in seconds");
    oraclec->add_option("-o,--output", oracle.output, "output path (default stdout)");

    GanttArgs gantt;
    CLI::App* ganttc = app.add_subcommand("gantt", "render a schedule as SVG");
    ganttc->add_option("schedule", gantt.schedule_path, "schedule JSON path")->required();
    ganttc->add_option("-o,--output", gantt.output, "output path (default stdout)");

    BenchArgs bench;
    CLI::App* benchc = app.add_subcommand("bench", "run a generated suite");
    benchc->add_option("--suite", bench.suite_path, "suite JSON path")->required();
    benchc->add_option("--parallel", bench.parallel, "worker threads");
    benchc->add_option("--format", bench.format, "json | table");
    benchc->add_option("-o,--output", bench.output, "output path (default stdout)");

    try {
        app.parse(argc, argv);
        if (generate->parsed()) return cmd_generate(gen);
        if (runc->parsed()) return cmd_run(run);
        if (boundsc->parsed()) return cmd_bounds(bounds);
        if (verifyc->parsed()) return cmd_verify(verify);
        if (oraclec->parsed()) return cmd_oracle(oracle);
        if (ganttc->parsed()) return cmd_gantt(gantt);
        if (benchc->parsed()) return cmd_bench(bench);
        std::cerr << app.help();
        return kExitUsage;
    } catch (const CLI::CallForHelp& e) {
        std::cout << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    } catch (const MissingAssignment& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInfeasible;
    } catch (const RenderError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInfeasible;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}
