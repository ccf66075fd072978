#pragma once

#include <cmath>
#include <cstddef>
#include <cstdio>
#include <cstdlib>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace capsched {

// Absolute tolerance for every capacity comparison in the toolkit.
inline constexpr double kCapacityTol = 1e-9;

/// Rounds to 12 significant digits, the precision every serialized number is
/// clamped to. Values that must survive a serialize/parse round trip losslessly
/// are passed through this before use.
inline double round12(double x) {
    if (x == 0.0 || !std::isfinite(x)) return x;
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return std::strtod(buf, nullptr);
}

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DomainError : Error {
    using Error::Error;
};
struct ParseError : Error {
    using Error::Error;
};
struct MissingAssignment : Error {
    using Error::Error;
};
struct InsufficientMachines : Error {
    using Error::Error;
};
struct NotSingleMachine : Error {
    using Error::Error;
};
struct PackPreconditionError : Error {
    using Error::Error;
};
struct NotWsvfSchedule : Error {
    using Error::Error;
};
struct TooLarge : Error {
    using Error::Error;
};
struct ConfigError : Error {
    using Error::Error;
};
struct RenderError : Error {
    using Error::Error;
};

/// One schedulable unit: duration p, demand d (fraction of one machine's
/// capacity), and weight w.
struct Job {
    std::string id;
    double p = 1.0;
    double d = 1.0;
    double w = 1.0;

    double volume() const { return p * d; }
};

/// A job set plus a machine count. Job order is the input order and is
/// preserved by every operation.
struct Instance {
    std::vector<Job> jobs;
    int machines = 1;

    std::size_t n() const { return jobs.size(); }

    double total_duration() const {
        double s = 0.0;
        for (const Job& j : jobs) s += j.p;
        return s;
    }

    double total_volume() const {
        double s = 0.0;
        for (const Job& j : jobs) s += j.volume();
        return s;
    }

    double max_demand() const {
        double a = 0.0;
        for (const Job& j : jobs) a = std::max(a, j.d);
        return a;
    }

    std::optional<std::size_t> find_job(std::string_view id) const {
        for (std::size_t k = 0; k < jobs.size(); ++k)
            if (jobs[k].id == id) return k;
        return std::nullopt;
    }
};

/// Copy of an instance with a different machine count.
inline Instance with_machines(Instance inst, int machines) {
    inst.machines = machines;
    return inst;
}

/// Placement of one job: machine index and start time. The completion time
/// is always derived as start + p, never stored.
struct Assignment {
    std::size_t job = 0;  // index into Instance::jobs
    int machine = 0;
    double start = 0.0;
};

/// A full assignment for an instance. Canonical form: assignments[k].job == k.
struct Schedule {
    std::string algorithm;
    std::vector<Assignment> assignments;

    double completion(const Instance& inst, std::size_t job) const {
        return assignments[job].start + inst.jobs[job].p;
    }
};

/// Checks the parse-time invariants (p >= 1, d in (0,1], w > 0, unique ids,
/// machines >= 1, nonempty job list) and returns the instance unchanged.
/// Programmatic construction may bypass this; compressed instances with
/// p < 1 are legal inputs everywhere downstream.
inline Instance validate_instance(Instance raw) {
    if (raw.machines < 1)
        throw DomainError("machines must be >= 1, got " + std::to_string(raw.machines));
    if (raw.jobs.empty()) throw DomainError("instance must contain at least one job");
    for (const Job& j : raw.jobs) {
        if (j.id.empty()) throw DomainError("job with empty id");
        if (!std::isfinite(j.p) || j.p < 1.0)
            throw DomainError("job " + j.id + ": duration must be >= 1, got " + std::to_string(j.p));
        if (!std::isfinite(j.d) || j.d <= 0.0 || j.d > 1.0)
            throw DomainError("job " + j.id + ": demand must be in (0,1], got " + std::to_string(j.d));
        if (!std::isfinite(j.w) || j.w <= 0.0)
            throw DomainError("job " + j.id + ": weight must be > 0, got " + std::to_string(j.w));
    }
    for (std::size_t a = 0; a < raw.jobs.size(); ++a)
        for (std::size_t b = a + 1; b < raw.jobs.size(); ++b)
            if (raw.jobs[a].id == raw.jobs[b].id)
                throw DomainError("duplicate job id: " + raw.jobs[a].id);
    return raw;
}

/// Throws unless the schedule carries exactly one assignment per job, in
/// canonical order, with machine indices inside [0, machines).
inline void validate_schedule_structure(const Instance& inst, const Schedule& sched) {
    if (sched.assignments.size() != inst.n())
        throw MissingAssignment("schedule has " + std::to_string(sched.assignments.size()) +
                                " assignments for " + std::to_string(inst.n()) + " jobs");
    for (std::size_t k = 0; k < sched.assignments.size(); ++k) {
        const Assignment& a = sched.assignments[k];
        if (a.job != k) throw MissingAssignment("assignment " + std::to_string(k) + " is out of order");
        if (a.machine < 0 || a.machine >= inst.machines)
            throw DomainError("job " + inst.jobs[k].id + ": machine index " +
                              std::to_string(a.machine) + " outside [0," +
                              std::to_string(inst.machines) + ")");
        if (!std::isfinite(a.start) || a.start < 0.0)
            throw DomainError("job " + inst.jobs[k].id + ": start must be >= 0");
    }
}

/// Weighted sum of completion times, summed in input job order so reported
/// costs are bit-reproducible.
inline double evaluate_cost(const Instance& inst, const Schedule& sched) {
    validate_schedule_structure(inst, sched);
    double cost = 0.0;
    for (std::size_t k = 0; k < inst.n(); ++k)
        cost += inst.jobs[k].w * (sched.assignments[k].start + inst.jobs[k].p);
    return cost;
}

}  // namespace capsched
