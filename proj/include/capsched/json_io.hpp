#pragma once

#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "core.hpp"
#include "pack_schedule.hpp"

namespace capsched {

using json = nlohmann::json;

/// Parses a JSON text, converting library failures into ParseError.
inline json parse_json(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const std::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path);
    out << text;
}

/// Canonical dump: two-space indent, sorted keys, trailing newline. All
/// numbers are rounded to 12 significant digits before they reach the
/// document, so dumps are byte-stable.
inline std::string dump_json(const json& doc) { return doc.dump(2) + "\n"; }

inline json instance_to_json(const Instance& inst) {
    json doc;
    doc["machines"] = inst.machines;
    json jobs = json::array();
    for (const Job& j : inst.jobs) {
        jobs.push_back({{"id", j.id}, {"p", round12(j.p)}, {"d", round12(j.d)}, {"w", round12(j.w)}});
    }
    doc["jobs"] = jobs;
    return doc;
}

namespace detail {

inline double number_field(const json& obj, const char* key, const std::string& where) {
    if (!obj.contains(key) || !obj[key].is_number())
        throw ParseError(where + ": missing numeric field '" + key + "'");
    return obj[key].get<double>();
}

}  // namespace detail

inline Instance instance_from_json(const json& doc) {
    if (!doc.is_object() || !doc.contains("machines") || !doc.contains("jobs"))
        throw ParseError("instance document needs 'machines' and 'jobs'");
    if (!doc["machines"].is_number_integer())
        throw ParseError("instance field 'machines' must be an integer");
    if (!doc["jobs"].is_array()) throw ParseError("instance field 'jobs' must be an array");
    Instance inst;
    inst.machines = doc["machines"].get<int>();
    for (const json& item : doc["jobs"]) {
        if (!item.is_object() || !item.contains("id") || !item["id"].is_string())
            throw ParseError("every job needs a string 'id'");
        Job j;
        j.id = item["id"].get<std::string>();
        j.p = detail::number_field(item, "p", "job " + j.id);
        j.d = detail::number_field(item, "d", "job " + j.id);
        j.w = detail::number_field(item, "w", "job " + j.id);
        inst.jobs.push_back(std::move(j));
    }
    return validate_instance(std::move(inst));
}

inline Instance load_instance_file(const std::string& path) {
    return instance_from_json(parse_json(read_file(path)));
}

struct ScheduleWriteOptions {
    std::string instance_path;  // empty: embed the instance inline
    std::optional<bool> optimal;
    const PackResult* pack = nullptr;
};

inline json schedule_to_json(const Instance& inst, const Schedule& sched,
                             const ScheduleWriteOptions& opts = {}) {
    validate_schedule_structure(inst, sched);
    json doc;
    doc["algorithm"] = sched.algorithm;
    if (opts.instance_path.empty())
        doc["instance"] = instance_to_json(inst);
    else
        doc["instance"] = opts.instance_path;
    json rows = json::array();
    for (std::size_t k = 0; k < inst.n(); ++k) {
        const Assignment& a = sched.assignments[k];
        rows.push_back(
            {{"job", inst.jobs[k].id}, {"machine", a.machine}, {"start", round12(a.start)}});
    }
    doc["assignments"] = rows;
    doc["cost"] = round12(evaluate_cost(inst, sched));
    if (opts.optimal) doc["optimal"] = *opts.optimal;
    if (opts.pack) {
        doc["epsilon"] = round12(opts.pack->epsilon);
        doc["level_max"] = opts.pack->level_max;
        json rounds = json::array();
        for (const PackIteration& it : opts.pack->iterations) {
            json r;
            r["level"] = it.level;
            r["budget"] = round12(it.budget);
            r["interval"] = {round12(it.interval_begin), round12(it.interval_end)};
            r["strip_width"] = round12(it.placement.width);
            r["selection_weight"] = round12(it.selection.total_weight);
            r["selection_volume"] = round12(it.selection.total_volume);
            json sel = json::array();
            for (std::size_t j : it.selection.selected) sel.push_back(inst.jobs[j].id);
            r["selected"] = sel;
            json fresh = json::array();
            for (std::size_t j : it.newly_packed) fresh.push_back(inst.jobs[j].id);
            r["newly_packed"] = fresh;
            rounds.push_back(std::move(r));
        }
        doc["iterations"] = rounds;
    }
    return doc;
}

/// A schedule file resolved against its instance (inline or referenced).
struct ScheduleDocument {
    Instance instance;
    Schedule schedule;
    double cost = 0.0;  // cost recorded in the file
    std::optional<bool> optimal;
    std::optional<double> epsilon;
    std::vector<PackIteration> iterations;  // pack runs only; interval data
};

inline ScheduleDocument schedule_from_json(const json& doc, const std::string& base_dir = "") {
    if (!doc.is_object() || !doc.contains("algorithm") || !doc.contains("instance") ||
        !doc.contains("assignments") || !doc.contains("cost"))
        throw ParseError("schedule document needs 'algorithm', 'instance', 'assignments', 'cost'");

    ScheduleDocument out;
    if (doc["instance"].is_string()) {
        std::string ref = doc["instance"].get<std::string>();
        std::filesystem::path p(ref);
        if (p.is_relative() && !base_dir.empty() && !std::filesystem::exists(p))
            p = std::filesystem::path(base_dir) / p;
        out.instance = load_instance_file(p.string());
    } else {
        out.instance = instance_from_json(doc["instance"]);
    }

    out.schedule.algorithm = doc["algorithm"].get<std::string>();
    if (!doc["assignments"].is_array()) throw ParseError("'assignments' must be an array");
    out.schedule.assignments.resize(out.instance.n());
    std::vector<char> seen(out.instance.n(), 0);
    for (const json& row : doc["assignments"]) {
        if (!row.is_object() || !row.contains("job") || !row["job"].is_string())
            throw ParseError("every assignment needs a string 'job'");
        std::string id = row["job"].get<std::string>();
        auto idx = out.instance.find_job(id);
        if (!idx) throw MissingAssignment("assignment references unknown job " + id);
        if (seen[*idx]) throw MissingAssignment("job " + id + " assigned twice");
        seen[*idx] = 1;
        if (!row.contains("machine") || !row["machine"].is_number_integer())
            throw ParseError("assignment for " + id + " needs integer 'machine'");
        out.schedule.assignments[*idx] = {*idx, row["machine"].get<int>(),
                                          detail::number_field(row, "start", "assignment " + id)};
    }
    for (std::size_t k = 0; k < out.instance.n(); ++k)
        if (!seen[k]) throw MissingAssignment("no assignment for job " + out.instance.jobs[k].id);
    validate_schedule_structure(out.instance, out.schedule);

    out.cost = detail::number_field(doc, "cost", "schedule");
    if (doc.contains("optimal")) {
        if (!doc["optimal"].is_boolean()) throw ParseError("'optimal' must be a boolean");
        out.optimal = doc["optimal"].get<bool>();
    }
    if (doc.contains("epsilon")) out.epsilon = detail::number_field(doc, "epsilon", "schedule");
    if (doc.contains("iterations")) {
        if (!doc["iterations"].is_array()) throw ParseError("'iterations' must be an array");
        for (const json& r : doc["iterations"]) {
            PackIteration it;
            it.level = r.at("level").get<int>();
            it.budget = detail::number_field(r, "budget", "iteration");
            if (!r.contains("interval") || !r["interval"].is_array() || r["interval"].size() != 2)
                throw ParseError("iteration needs 'interval' [begin, end]");
            it.interval_begin = r["interval"][0].get<double>();
            it.interval_end = r["interval"][1].get<double>();
            it.placement.width = detail::number_field(r, "strip_width", "iteration");
            it.selection.budget = it.budget;
            it.selection.total_weight = detail::number_field(r, "selection_weight", "iteration");
            it.selection.total_volume = detail::number_field(r, "selection_volume", "iteration");
            for (const json& id : r.at("selected")) {
                auto idx = out.instance.find_job(id.get<std::string>());
                if (idx) it.selection.selected.push_back(*idx);
            }
            for (const json& id : r.at("newly_packed")) {
                auto idx = out.instance.find_job(id.get<std::string>());
                if (idx) it.newly_packed.push_back(*idx);
            }
            out.iterations.push_back(std::move(it));
        }
    }
    return out;
}

inline ScheduleDocument load_schedule_file(const std::string& path) {
    std::filesystem::path p(path);
    return schedule_from_json(parse_json(read_file(path)), p.parent_path().string());
}

}  // namespace capsched
