#include <catch2/catch_amalgamated.hpp>

#include <capsched/capsched.hpp>

#include "helpers.hpp"

using namespace capsched;
using Catch::Approx;

TEST_CASE("instance validation accepts the reference instance") {
    Instance inst = validate_instance(testutil::reference_instance());
    REQUIRE(inst.n() == 8);
    REQUIRE(inst.machines == 2);
    REQUIRE(inst.total_duration() == Approx(30.0));
    REQUIRE(inst.max_demand() == Approx(0.5));
}

TEST_CASE("instance validation rejects out-of-range fields") {
    auto bad = [](Job j) {
        Instance inst;
        inst.machines = 1;
        inst.jobs = {j};
        return inst;
    };
    REQUIRE_THROWS_AS(validate_instance(bad({"a", 4.0, 1.2, 1.0})), DomainError);
    REQUIRE_THROWS_AS(validate_instance(bad({"a", 4.0, 0.0, 1.0})), DomainError);
    REQUIRE_THROWS_AS(validate_instance(bad({"a", 4.0, -0.3, 1.0})), DomainError);
    REQUIRE_THROWS_AS(validate_instance(bad({"a", 0.5, 0.5, 1.0})), DomainError);
    REQUIRE_THROWS_AS(validate_instance(bad({"a", 4.0, 0.5, 0.0})), DomainError);
    REQUIRE_THROWS_AS(validate_instance(bad({"a", 4.0, 0.5, -2.0})), DomainError);

    Instance dup;
    dup.machines = 1;
    dup.jobs = {{"a", 1, 0.5, 1}, {"a", 2, 0.5, 1}};
    REQUIRE_THROWS_AS(validate_instance(dup), DomainError);

    Instance none;
    none.machines = 0;
    none.jobs = {{"a", 1, 0.5, 1}};
    REQUIRE_THROWS_AS(validate_instance(none), DomainError);

    Instance empty;
    empty.machines = 1;
    REQUIRE_THROWS_AS(validate_instance(empty), DomainError);
}

TEST_CASE("cost of the frozen reference placement") {
    Instance inst = testutil::reference_instance();
    Schedule sched = testutil::reference_wsvf_schedule();
    REQUIRE(evaluate_cost(inst, sched) == Approx(testutil::kReferenceCost).margin(1e-9));
}

TEST_CASE("cost of a single job is w times (start + p)") {
    Instance inst = testutil::make_instance({{4.0, 0.5, 8.0}}, 1);
    Schedule sched;
    sched.algorithm = "manual";
    sched.assignments = {{0, 0, 0.0}};
    REQUIRE(evaluate_cost(inst, sched) == Approx(32.0));
    sched.assignments[0].start = 2.5;
    REQUIRE(evaluate_cost(inst, sched) == Approx(8.0 * 6.5));
}

TEST_CASE("structural schedule errors") {
    Instance inst = testutil::make_instance({{2, 0.5, 1}, {3, 0.5, 1}}, 2);
    Schedule sched;
    sched.algorithm = "manual";
    sched.assignments = {{0, 0, 0.0}};
    REQUIRE_THROWS_AS(evaluate_cost(inst, sched), MissingAssignment);

    sched.assignments = {{0, 0, 0.0}, {1, 2, 0.0}};
    REQUIRE_THROWS_AS(evaluate_cost(inst, sched), DomainError);

    sched.assignments = {{0, 0, 0.0}, {1, 1, -1.0}};
    REQUIRE_THROWS_AS(evaluate_cost(inst, sched), DomainError);

    sched.assignments = {{1, 0, 0.0}, {0, 1, 0.0}};
    REQUIRE_THROWS_AS(evaluate_cost(inst, sched), MissingAssignment);
}

TEST_CASE("capacity profile accumulates overlapping demand") {
    CapacityProfile prof;
    prof.add(0.0, 4.0, 0.4);
    prof.add(0.0, 3.0, 0.4);
    prof.add(3.0, 5.0, 0.45);

    REQUIRE(prof.segments() == 3);
    REQUIRE(prof.segment_begin(0) == Approx(0.0));
    REQUIRE(prof.segment_end(0) == Approx(3.0));
    REQUIRE(prof.segment_usage(0) == Approx(0.8));
    REQUIRE(prof.segment_usage(1) == Approx(0.85));
    REQUIRE(prof.segment_end(2) == Approx(8.0));
    REQUIRE(prof.segment_usage(2) == Approx(0.45));

    REQUIRE(prof.usage_at(-1.0) == 0.0);
    REQUIRE(prof.usage_at(0.0) == Approx(0.8));
    REQUIRE(prof.usage_at(3.5) == Approx(0.85));
    REQUIRE(prof.usage_at(8.0) == 0.0);

    REQUIRE(prof.integral() == Approx(0.4 * 4 + 0.4 * 3 + 0.45 * 5));
}

TEST_CASE("profile of the reference schedule matches the worked trace") {
    Instance inst = testutil::reference_instance();
    Schedule sched = testutil::reference_wsvf_schedule();
    CapacityProfile m0 = capacity_profile(inst, sched, 0);
    REQUIRE(m0.segments() == 3);
    REQUIRE(m0.segment_usage(0) == Approx(0.8));
    REQUIRE(m0.segment_end(0) == Approx(3.0));
    REQUIRE(m0.segment_usage(1) == Approx(0.85));
    REQUIRE(m0.segment_end(1) == Approx(4.0));
    REQUIRE(m0.segment_usage(2) == Approx(0.45));
    REQUIRE(m0.segment_end(2) == Approx(8.0));

    CapacityProfile m1 = capacity_profile(inst, sched, 1);
    REQUIRE(m1.usage_at(0.5) == Approx(0.25 + 0.45 + 0.28));
    REQUIRE(m1.integral() + m0.integral() == Approx(inst.total_volume()));
}

TEST_CASE("earliest feasible start sweeps over blocking segments") {
    CapacityProfile partial;  // two long jobs, demand 0.8 until 3, 0.4 until 4
    partial.add(0.0, 4.0, 0.4);
    partial.add(0.0, 3.0, 0.4);
    REQUIRE(earliest_feasible_start(partial, 5.0, 0.45) == Approx(3.0));

    CapacityProfile full = partial;  // plus the job that starts at 3
    full.add(3.0, 5.0, 0.45);
    REQUIRE(earliest_feasible_start(full, 5.0, 0.45) == Approx(4.0));

    CapacityProfile light;
    light.add(0.0, 1.0, 0.7);
    REQUIRE(earliest_feasible_start(light, 1.0, 0.28) == Approx(0.0));

    CapacityProfile empty;
    REQUIRE(earliest_feasible_start(empty, 3.0, 1.0) == Approx(0.0));
}

TEST_CASE("earliest feasible start returns the minimum candidate") {
    std::mt19937_64 rng(7);
    auto unit = [&] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
    for (int round = 0; round < 200; ++round) {
        CapacityProfile prof;
        int jobs = 1 + static_cast<int>(rng() % 6);
        for (int k = 0; k < jobs; ++k)
            prof.add(std::floor(unit() * 8.0), 1.0 + std::floor(unit() * 4.0),
                     0.05 + 0.9 * unit());
        double p = 1.0 + std::floor(unit() * 3.0);
        double d = 0.05 + 0.9 * unit();
        double t = earliest_feasible_start(prof, p, d);

        auto fits = [&](double s) {
            for (std::size_t k = 0; k < prof.segments(); ++k) {
                if (prof.segment_end(k) <= s || prof.segment_begin(k) >= s + p) continue;
                if (prof.segment_usage(k) + d > 1.0 + kCapacityTol) return false;
            }
            return true;
        };
        REQUIRE(fits(t));
        // no earlier candidate start works; candidates are 0 and segment ends
        std::vector<double> candidates = {0.0};
        for (std::size_t k = 0; k < prof.segments(); ++k) candidates.push_back(prof.segment_end(k));
        for (double s : candidates)
            if (s < t - 1e-12) REQUIRE_FALSE(fits(s));
    }
}

TEST_CASE("feasibility checker flags overloaded segments") {
    Instance inst = testutil::reference_instance();
    Schedule good = testutil::reference_wsvf_schedule();
    REQUIRE(check_feasibility(inst, good).ok());

    Instance two = testutil::make_instance({{2, 0.6, 1}, {2, 0.6, 1}}, 1);
    Schedule bad;
    bad.algorithm = "manual";
    bad.assignments = {{0, 0, 0.0}, {1, 0, 1.0}};
    FeasibilityReport report = check_feasibility(two, bad);
    REQUIRE_FALSE(report.ok());
    REQUIRE(report.violations.size() == 1);
    REQUIRE(report.violations[0].machine == 0);
    REQUIRE(report.violations[0].begin == Approx(1.0));
    REQUIRE(report.violations[0].end == Approx(2.0));
    REQUIRE(report.violations[0].demand == Approx(1.2));
}

TEST_CASE("any feasible schedule costs at least the weighted durations") {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        GeneratorConfig cfg;
        cfg.n = 12;
        cfg.machines = 1 + static_cast<int>(seed % 3);
        cfg.seed = seed;
        Instance inst = generate_instance(cfg);
        double floor_cost = 0.0;
        for (const Job& j : inst.jobs) floor_cost += j.w * j.p;

        for (Schedule sched : {wsvf_schedule(inst), wspt_schedule(inst)}) {
            REQUIRE(check_feasibility(inst, sched).ok());
            REQUIRE(evaluate_cost(inst, sched) >= floor_cost - 1e-9);
            // delaying every start preserves feasibility and only adds cost
            for (Assignment& a : sched.assignments) a.start += 1.5;
            sched.algorithm = "manual";
            REQUIRE(check_feasibility(inst, sched).ok());
            REQUIRE(evaluate_cost(inst, sched) >= floor_cost - 1e-9);
        }
    }
}

TEST_CASE("instance json round trip") {
    Instance inst = testutil::reference_instance();
    json doc = instance_to_json(inst);
    Instance back = instance_from_json(doc);
    REQUIRE(back.machines == inst.machines);
    REQUIRE(back.n() == inst.n());
    for (std::size_t k = 0; k < inst.n(); ++k) {
        REQUIRE(back.jobs[k].id == inst.jobs[k].id);
        REQUIRE(back.jobs[k].p == inst.jobs[k].p);
        REQUIRE(back.jobs[k].d == inst.jobs[k].d);
        REQUIRE(back.jobs[k].w == inst.jobs[k].w);
    }
    REQUIRE(dump_json(instance_to_json(back)) == dump_json(doc));
}

TEST_CASE("numbers serialize at twelve significant digits") {
    REQUIRE(round12(1.0 / 3.0) == Approx(0.333333333333).epsilon(1e-13));
    REQUIRE(round12(123456789012345.0) == Approx(123456789012000.0));
    REQUIRE(round12(0.0) == 0.0);
    REQUIRE(round12(-2.5) == -2.5);

    Instance inst = testutil::make_instance({{1.0 + 1.0 / 3.0, 1.0 / 3.0, 2.0 / 3.0}}, 1);
    json doc = instance_to_json(inst);
    std::string text = dump_json(doc);
    Instance back = instance_from_json(parse_json(text));
    REQUIRE(dump_json(instance_to_json(back)) == text);
}

TEST_CASE("schedule json round trip and id mapping") {
    Instance inst = testutil::reference_instance();
    Schedule sched = testutil::reference_wsvf_schedule();
    json doc = schedule_to_json(inst, sched);
    REQUIRE(doc["cost"].get<double>() == Approx(135.2));

    ScheduleDocument loaded = schedule_from_json(doc);
    REQUIRE(loaded.schedule.algorithm == "wsvf");
    REQUIRE(loaded.cost == Approx(135.2));
    for (std::size_t k = 0; k < inst.n(); ++k) {
        REQUIRE(loaded.schedule.assignments[k].machine == sched.assignments[k].machine);
        REQUIRE(loaded.schedule.assignments[k].start == Approx(sched.assignments[k].start));
    }

    // assignments listed out of order still map back by id
    json shuffled = doc;
    std::swap(shuffled["assignments"][0], shuffled["assignments"][5]);
    ScheduleDocument remapped = schedule_from_json(shuffled);
    REQUIRE(remapped.schedule.assignments[0].machine == sched.assignments[0].machine);

    json missing = doc;
    missing["assignments"].erase(3);
    REQUIRE_THROWS_AS(schedule_from_json(missing), MissingAssignment);

    json duplicated = doc;
    duplicated["assignments"][1] = duplicated["assignments"][0];
    REQUIRE_THROWS_AS(schedule_from_json(duplicated), MissingAssignment);
}

TEST_CASE("parse errors carry context") {
    REQUIRE_THROWS_AS(parse_json("{nope"), ParseError);
    REQUIRE_THROWS_AS(instance_from_json(parse_json("{\"machines\": 1}")), ParseError);
    REQUIRE_THROWS_AS(instance_from_json(parse_json(
                          R"({"machines": 1, "jobs": [{"id": "a", "p": 2, "d": 1.5, "w": 1}]})")),
                      DomainError);
    REQUIRE_THROWS_AS(instance_from_json(parse_json(
                          R"({"machines": 1, "jobs": [{"id": "a", "p": 2, "w": 1}]})")),
                      ParseError);
}
