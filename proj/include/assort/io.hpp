#pragma once

#include <filesystem>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "error.hpp"
#include "explore.hpp"
#include "graph.hpp"

namespace assort {

namespace detail {

inline std::string strip_cr(std::string s) {
    if (!s.empty() && s.back() == '\r') s.pop_back();
    return s;
}

inline std::vector<std::string> split_ws(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream ss(line);
    std::string tok;
    while (ss >> tok) out.push_back(tok);
    return out;
}

} // namespace detail

// One edge per line as two whitespace-separated node tokens; lines starting
// with '#' and blank lines are ignored. Node tokens map to dense indices in
// order of first appearance.
inline graph parse_edge_list(std::istream& in, const graph_options& opts = {},
                             const std::string& source = "<edge list>") {
    std::unordered_map<std::string, std::size_t> index_of;
    std::vector<std::string> ids;
    std::vector<std::pair<std::size_t, std::size_t>> raw;
    std::vector<std::size_t> lines;

    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        lineno++;
        line = detail::strip_cr(line);
        if (line.empty() || line[0] == '#') continue;
        const auto toks = detail::split_ws(line);
        if (toks.empty()) continue;
        if (toks.size() != 2)
            throw parse_error(source + ":" + std::to_string(lineno) + ": expected two node tokens, got " +
                              std::to_string(toks.size()));
        std::size_t uv[2];
        for (int k = 0; k < 2; ++k) {
            auto [it, inserted] = index_of.try_emplace(toks[k], ids.size());
            if (inserted) ids.push_back(toks[k]);
            uv[k] = it->second;
        }
        if (uv[0] == uv[1])
            throw parse_error(source + ":" + std::to_string(lineno) + ": self loop at node '" +
                              toks[0] + "'");
        raw.emplace_back(uv[0], uv[1]);
        lines.push_back(lineno);
    }

    const std::size_t n = ids.size();
    try {
        return validate_graph(raw, n, opts, std::move(ids));
    } catch (const duplicate_edge_error& e) {
        // locate the offending line for the message
        std::size_t seen = 0;
        for (std::size_t i = 0; i < raw.size(); ++i) {
            auto [a, b] = raw[i];
            if (std::min(a, b) == e.u && std::max(a, b) == e.v && ++seen == 2)
                throw parse_error(source + ":" + std::to_string(lines[i]) + ": " + e.what());
        }
        throw;
    }
}

inline graph parse_edge_list_file(const std::string& path, const graph_options& opts = {}) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open edge list file '" + path + "'");
    return parse_edge_list(in, opts, std::filesystem::path(path).filename().string());
}

// node<TAB>label per line, label in {0,1}; '#' lines ignored. Every node of
// the graph must receive exactly one label.
inline metadata_assignment parse_metadata(std::istream& in, const graph& g,
                                          const std::string& source = "<metadata>") {
    if (!g.has_node_ids())
        throw parse_error("metadata files need a graph with external node ids");
    std::unordered_map<std::string, std::size_t> index_of;
    for (std::size_t v = 0; v < g.node_count(); ++v) index_of.emplace(g.node_id_of(v), v);

    std::vector<int> labels(g.node_count(), -1);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        lineno++;
        line = detail::strip_cr(line);
        if (line.empty() || line[0] == '#') continue;
        const auto tab = line.find('\t');
        if (tab == std::string::npos)
            throw parse_error(source + ":" + std::to_string(lineno) +
                              ": expected node<TAB>label");
        const std::string node = line.substr(0, tab);
        const std::string label = line.substr(tab + 1);
        const auto it = index_of.find(node);
        if (it == index_of.end())
            throw parse_error(source + ":" + std::to_string(lineno) + ": unknown node '" + node +
                              "'");
        if (label != "0" && label != "1")
            throw parse_error(source + ":" + std::to_string(lineno) + ": label must be 0 or 1, got '" +
                              label + "'");
        if (labels[it->second] != -1)
            throw parse_error(source + ":" + std::to_string(lineno) + ": node '" + node +
                              "' labeled twice");
        labels[it->second] = label == "1" ? 1 : 0;
    }
    std::vector<std::uint8_t> out(g.node_count());
    for (std::size_t v = 0; v < g.node_count(); ++v) {
        if (labels[v] == -1)
            throw parse_error(source + ": node '" + g.node_id_of(v) + "' has no label");
        out[v] = static_cast<std::uint8_t>(labels[v]);
    }
    return metadata_assignment(std::move(out));
}

inline metadata_assignment parse_metadata_file(const std::string& path, const graph& g) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open metadata file '" + path + "'");
    return parse_metadata(in, g, std::filesystem::path(path).filename().string());
}

inline void write_edge_list(std::ostream& out, const graph& g) {
    for (const auto& [u, v] : g.edges()) {
        if (g.has_node_ids())
            out << g.node_id_of(u) << ' ' << g.node_id_of(v) << '\n';
        else
            out << u << ' ' << v << '\n';
    }
}

inline void write_metadata(std::ostream& out, const graph& g, const metadata_assignment& a) {
    if (a.labels.size() != g.node_count())
        throw length_mismatch_error(a.labels.size(), g.node_count());
    for (std::size_t v = 0; v < g.node_count(); ++v) {
        if (g.has_node_ids())
            out << g.node_id_of(v);
        else
            out << v;
        out << '\t' << static_cast<int>(a.labels[v]) << '\n';
    }
}

inline void write_histogram_csv(std::ostream& out, const histogram& h) {
    const auto edges = h.edges();
    out.precision(std::numeric_limits<double>::max_digits10);
    out << "bin_left,bin_right,count\n";
    for (std::size_t i = 0; i < h.bins; ++i)
        out << edges[i] << ',' << edges[i + 1] << ',' << h.counts[i] << '\n';
}

} // namespace assort
