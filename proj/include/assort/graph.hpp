#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"

namespace assort {

using node_id = std::uint32_t;
using edge = std::pair<node_id, node_id>; // canonical: first < second

// Options for validate_graph / the edge-list parser.
struct graph_options {
    bool dedupe = false;     // collapse exact duplicate undirected edges
    bool symmetrize = false; // collapse (u,v) given together with (v,u)
};

// Undirected simple graph with dense node indices 0..n-1.
// Optional external ids map index -> original token.
class graph {
public:
    graph(std::size_t n, std::vector<edge> edges, std::vector<std::string> node_ids = {})
        : n_(n), edges_(std::move(edges)), node_ids_(std::move(node_ids)),
          adjacency_(n) {
        for (const auto& [u, v] : edges_) {
            adjacency_[u].push_back(v);
            adjacency_[v].push_back(u);
        }
        for (auto& nbrs : adjacency_)
            std::sort(nbrs.begin(), nbrs.end());
    }

    std::size_t node_count() const { return n_; }
    std::size_t edge_count() const { return edges_.size(); }
    const std::vector<edge>& edges() const { return edges_; }
    const std::vector<node_id>& neighbors(node_id v) const { return adjacency_[v]; }
    std::size_t degree(node_id v) const { return adjacency_[v].size(); }

    bool has_node_ids() const { return !node_ids_.empty(); }
    const std::vector<std::string>& node_ids() const { return node_ids_; }
    const std::string& node_id_of(node_id v) const { return node_ids_[v]; }

private:
    std::size_t n_;
    std::vector<edge> edges_;
    std::vector<std::string> node_ids_;
    std::vector<std::vector<node_id>> adjacency_;
};

// Binary per-node labels with cached class sizes.
struct metadata_assignment {
    std::vector<std::uint8_t> labels; // entries in {0,1}
    std::size_t n1 = 0;
    std::size_t n0 = 0;

    metadata_assignment() = default;
    explicit metadata_assignment(std::vector<std::uint8_t> l) : labels(std::move(l)) {
        for (auto b : labels)
            (b ? n1 : n0)++;
    }
};

// Degree multiset sorted non-increasing, with head/tail partial sums.
class degree_sequence {
public:
    degree_sequence() = default;
    explicit degree_sequence(std::vector<std::size_t> degrees) : degrees_(std::move(degrees)) {
        std::sort(degrees_.begin(), degrees_.end(), std::greater<>());
    }

    std::size_t size() const { return degrees_.size(); }
    std::size_t operator[](std::size_t i) const { return degrees_[i]; }
    const std::vector<std::size_t>& values() const { return degrees_; }
    std::size_t sum() const { return std::accumulate(degrees_.begin(), degrees_.end(), std::size_t{0}); }

    // k largest degrees
    std::vector<std::size_t> head(std::size_t k) const {
        check_k(k);
        return {degrees_.begin(), degrees_.begin() + k};
    }
    // k smallest degrees
    std::vector<std::size_t> tail(std::size_t k) const {
        check_k(k);
        return {degrees_.end() - k, degrees_.end()};
    }
    std::size_t head_sum(std::size_t k) const {
        check_k(k);
        return std::accumulate(degrees_.begin(), degrees_.begin() + k, std::size_t{0});
    }
    std::size_t tail_sum(std::size_t k) const {
        check_k(k);
        return std::accumulate(degrees_.end() - k, degrees_.end(), std::size_t{0});
    }

private:
    void check_k(std::size_t k) const {
        if (k > degrees_.size())
            throw parse_error("partition size " + std::to_string(k) + " exceeds sequence length " +
                              std::to_string(degrees_.size()));
    }
    std::vector<std::size_t> degrees_;
};

// Edge partition by endpoint labels: m11 + m10 + m00 = m.
struct edge_counts {
    std::int64_t m11 = 0;
    std::int64_t m10 = 0;
    std::int64_t m00 = 0;
    std::int64_t m() const { return m11 + m10 + m00; }
};

// Builds a validated graph from raw index pairs.
// Throws self_loop_error, duplicate_edge_error, index_out_of_range_error.
inline graph validate_graph(const std::vector<std::pair<std::size_t, std::size_t>>& raw_edges,
                            std::size_t n, const graph_options& opts = {},
                            std::vector<std::string> node_ids = {}) {
    std::set<edge> seen;          // canonical undirected keys
    std::set<std::pair<std::size_t, std::size_t>> seen_directed;
    std::vector<edge> edges;
    for (const auto& [a, b] : raw_edges) {
        if (a >= n) throw index_out_of_range_error(a, n);
        if (b >= n) throw index_out_of_range_error(b, n);
        if (a == b) throw self_loop_error(a);
        edge e{static_cast<node_id>(std::min(a, b)), static_cast<node_id>(std::max(a, b))};
        if (seen.contains(e)) {
            bool reversed_dup = !seen_directed.contains({a, b});
            if (opts.dedupe) continue;
            if (opts.symmetrize && reversed_dup) continue;
            throw duplicate_edge_error(e.first, e.second);
        }
        seen.insert(e);
        seen_directed.insert({a, b});
        edges.push_back(e);
    }
    std::sort(edges.begin(), edges.end());
    return graph(n, std::move(edges), std::move(node_ids));
}

inline degree_sequence make_degree_sequence(const graph& g) {
    std::vector<std::size_t> d(g.node_count());
    for (std::size_t v = 0; v < g.node_count(); ++v)
        d[v] = g.degree(static_cast<node_id>(v));
    return degree_sequence(std::move(d));
}

inline edge_counts count_edges(const graph& g, const metadata_assignment& a) {
    if (a.labels.size() != g.node_count())
        throw length_mismatch_error(a.labels.size(), g.node_count());
    edge_counts ec;
    for (const auto& [u, v] : g.edges()) {
        int s = a.labels[u] + a.labels[v];
        if (s == 2) ec.m11++;
        else if (s == 1) ec.m10++;
        else ec.m00++;
    }
    return ec;
}

// (sum of k largest, sum of k smallest)
inline std::pair<std::size_t, std::size_t> partition_degree_sums(const degree_sequence& d,
                                                                 std::size_t k) {
    const std::size_t head = d.head_sum(k);
    return {head, d.sum() - head};
}

inline bool is_connected(const graph& g) {
    if (g.node_count() == 0) return true;
    std::vector<char> seen(g.node_count(), 0);
    std::vector<node_id> stack{0};
    seen[0] = 1;
    std::size_t visited = 1;
    while (!stack.empty()) {
        node_id v = stack.back();
        stack.pop_back();
        for (node_id w : g.neighbors(v)) {
            if (!seen[w]) {
                seen[w] = 1;
                visited++;
                stack.push_back(w);
            }
        }
    }
    return visited == g.node_count();
}

} // namespace assort
