#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "bounds.hpp"
#include "error.hpp"
#include "explore.hpp"
#include "graph.hpp"
#include "mixing.hpp"
#include "version.hpp"

namespace assort {

using ordered_json = nlohmann::ordered_json;

namespace detail {

inline ordered_json opt(const std::optional<double>& v) {
    return v ? ordered_json(*v) : ordered_json(nullptr);
}

inline ordered_json triple_json(const count_triple& t) {
    return {{"m11", t.m11}, {"m10", t.m10}, {"m00", t.m00}};
}

} // namespace detail

inline ordered_json report_header(const std::string& command) {
    ordered_json j;
    j["schema_version"] = schema_version;
    j["tool"] = "assort";
    j["tool_version"] = version;
    j["command"] = command;
    return j;
}

inline ordered_json input_digest(const graph& g, std::optional<std::size_t> n1,
                                 bool with_node_ids) {
    ordered_json j;
    j["nodes"] = g.node_count();
    j["edges"] = g.edge_count();
    if (n1) {
        j["n1"] = *n1;
        j["n0"] = g.node_count() - *n1;
    } else {
        j["n1"] = nullptr;
        j["n0"] = nullptr;
    }
    if (with_node_ids && g.has_node_ids())
        j["node_ids"] = g.node_ids();
    else
        j["node_ids"] = nullptr;
    return j;
}

inline ordered_json space_json(const edge_count_bounds& b,
                               const assortativity_range_result& range,
                               const std::optional<double>& normalized) {
    ordered_json j;
    j["edge_bounds"] = {{"m11", {b.m11_lower, b.m11_upper}},
                        {"m10", {b.m10_lower, b.m10_upper}},
                        {"m00", {b.m00_lower, b.m00_upper}}};
    j["r_lower"] = range.r_lower;
    j["r_upper"] = range.r_upper;
    j["realizing_lower"] = detail::triple_json(range.realizing_lower);
    j["realizing_upper"] = ordered_json::array({detail::triple_json(range.realizing_upper_low),
                                                detail::triple_json(range.realizing_upper_high)});
    ordered_json log = ordered_json::array();
    for (const auto& c : range.candidate_log) {
        ordered_json e;
        e["case"] = c.case_id;
        e["m11"] = c.counts.m11;
        e["m10"] = c.counts.m10;
        e["m00"] = c.counts.m00;
        e["guard_m11"] = c.guard_m11;
        e["guard_m00"] = c.guard_m00;
        e["feasible"] = c.feasible;
        e["r"] = detail::opt(c.r);
        log.push_back(e);
    }
    j["candidate_log"] = log;
    j["normalized_r"] = detail::opt(normalized);
    return j;
}

inline ordered_json histogram_json(const histogram& h) {
    return {{"bin_edges", h.edges()}, {"counts", h.counts}};
}

inline ordered_json exploration_results_json(const exploration_report& rep) {
    ordered_json j;
    j["sample_count"] = rep.sample_count;
    j["undefined_count"] = rep.undefined_count;
    j["r_min"] = detail::opt(rep.r_min);
    j["r_max"] = detail::opt(rep.r_max);
    j["mean_r"] = detail::opt(rep.mean_r);
    if (rep.method == explore_method::heuristic) j["best_r"] = detail::opt(rep.best_r);
    j["histogram"] = histogram_json(rep.hist);
    return j;
}

// Schema validation. Non-strict checks version and command; strict
// additionally rejects unknown keys in the fixed parts of the layout.
inline void validate_report(const ordered_json& j, bool strict) {
    if (!j.is_object()) throw parse_error("report must be a JSON object");
    if (!j.contains("schema_version") || !j["schema_version"].is_number_integer())
        throw parse_error("report lacks an integer schema_version");
    if (j["schema_version"].get<int>() != schema_version)
        throw parse_error("unsupported schema_version " + j["schema_version"].dump());
    if (!j.contains("command") || !j["command"].is_string())
        throw parse_error("report lacks a command string");
    const std::string command = j["command"].get<std::string>();
    const bool analysis = command == "bounds";
    if (!analysis && command != "enumerate" && command != "heuristic" && command != "permtest")
        throw parse_error("unknown report command '" + command + "'");
    if (!strict) return;

    const std::vector<std::string> common = {"schema_version", "tool", "tool_version",
                                             "command",        "input", "config",
                                             "seed"};
    std::vector<std::string> allowed = common;
    if (analysis) {
        allowed.insert(allowed.end(), {"observed", "spaces", "exploration"});
    } else {
        allowed.insert(allowed.end(), {"method", "space", "results"});
    }
    for (const auto& [key, value] : j.items()) {
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
            throw parse_error("unknown report field '" + key + "'");
    }
    for (const auto& key : allowed)
        if (!j.contains(key)) throw parse_error("report lacks field '" + key + "'");

    const std::vector<std::string> input_keys = {"nodes", "edges", "n1", "n0", "node_ids"};
    for (const auto& [key, value] : j["input"].items())
        if (std::find(input_keys.begin(), input_keys.end(), key) == input_keys.end())
            throw parse_error("unknown report field 'input." + key + "'");

    if (analysis) {
        const std::vector<std::string> space_keys = {
            "edge_bounds", "r_lower", "r_upper", "realizing_lower",
            "realizing_upper", "candidate_log", "normalized_r"};
        for (const auto& [name, sp] : j["spaces"].items()) {
            if (name != "mgs" && name != "gs")
                throw parse_error("unknown report field 'spaces." + name + "'");
            if (sp.is_null()) continue;
            for (const auto& [key, value] : sp.items())
                if (std::find(space_keys.begin(), space_keys.end(), key) == space_keys.end())
                    throw parse_error("unknown report field 'spaces." + name + "." + key + "'");
        }
    } else {
        const std::vector<std::string> result_keys = {
            "sample_count", "undefined_count", "r_min",      "r_max",        "mean_r",
            "best_r",       "histogram",       "p_value",    "observed_r",   "extreme_count"};
        for (const auto& [key, value] : j["results"].items())
            if (std::find(result_keys.begin(), result_keys.end(), key) == result_keys.end())
                throw parse_error("unknown report field 'results." + key + "'");
    }
}

} // namespace assort
