#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <vector>

#include "error.hpp"
#include "graph.hpp"
#include "mixing.hpp"

namespace assort {

inline constexpr std::size_t oracle_node_cap = 10;

// Erdos-Gallai graphicality test on a non-increasing degree sequence.
inline bool erdos_gallai(const degree_sequence& d) {
    const std::size_t n = d.size();
    if (d.sum() % 2 != 0) return false;
    if (n > 0 && d[0] >= n) return false;
    std::int64_t head = 0;
    for (std::size_t k = 1; k <= n; ++k) {
        head += static_cast<std::int64_t>(d[k - 1]);
        std::int64_t rhs = static_cast<std::int64_t>(k) * (static_cast<std::int64_t>(k) - 1);
        for (std::size_t i = k; i < n; ++i)
            rhs += static_cast<std::int64_t>(std::min(d[i], k));
        if (head > rhs) return false;
    }
    return true;
}

namespace detail {

// Emits every labeled simple graph whose slot i has degree exactly d[i],
// choosing each node's neighbors among higher-indexed slots so that every
// edge set is produced exactly once.
inline void enumerate_graphs_impl(const std::vector<std::size_t>& target,
                                  const std::function<void(const std::vector<edge>&)>& emit) {
    const std::size_t n = target.size();
    std::vector<std::size_t> rem(target);
    std::vector<edge> edges;
    std::vector<node_id> chosen;

    std::function<void(std::size_t)> place = [&](std::size_t u) {
        if (u == n) {
            emit(edges);
            return;
        }
        const std::size_t need = rem[u];
        if (need == 0) {
            place(u + 1);
            return;
        }
        std::vector<node_id> avail;
        std::size_t capacity = 0;
        for (std::size_t v = u + 1; v < n; ++v) {
            if (rem[v] > 0) {
                avail.push_back(static_cast<node_id>(v));
                capacity += 1;
            }
        }
        if (need > capacity) return;

        std::function<void(std::size_t, std::size_t)> pick = [&](std::size_t idx,
                                                                 std::size_t taken) {
            if (taken == need) {
                place(u + 1);
                return;
            }
            if (avail.size() - idx < need - taken) return;
            // take avail[idx]
            node_id v = avail[idx];
            rem[v]--;
            edges.push_back({static_cast<node_id>(u), v});
            pick(idx + 1, taken + 1);
            edges.pop_back();
            rem[v]++;
            // skip avail[idx]
            pick(idx + 1, taken);
        };
        rem[u] = 0;
        pick(0, 0);
        rem[u] = need;
    };
    place(0);
}

inline bool edges_connected(std::size_t n, const std::vector<edge>& edges) {
    if (n == 0) return true;
    std::vector<std::vector<node_id>> adj(n);
    for (const auto& [u, v] : edges) {
        adj[u].push_back(v);
        adj[v].push_back(u);
    }
    std::vector<char> seen(n, 0);
    std::vector<node_id> stack{0};
    seen[0] = 1;
    std::size_t visited = 1;
    while (!stack.empty()) {
        node_id v = stack.back();
        stack.pop_back();
        for (node_id w : adj[v]) {
            if (!seen[w]) {
                seen[w] = 1;
                visited++;
                stack.push_back(w);
            }
        }
    }
    return visited == n;
}

} // namespace detail

// Streams every labeled simple graph realizing d (slots sorted non-increasing).
inline void for_each_labeled_graph(const degree_sequence& d, bool connected_only,
                                   const std::function<void(const std::vector<edge>&)>& fn) {
    if (d.size() > oracle_node_cap) throw too_large_error(d.size(), oracle_node_cap);
    if (!erdos_gallai(d))
        throw not_graphical_error("sequence fails the Erdos-Gallai condition");
    detail::enumerate_graphs_impl(d.values(), [&](const std::vector<edge>& edges) {
        if (connected_only && !detail::edges_connected(d.size(), edges)) return;
        fn(edges);
    });
}

inline std::vector<graph> enumerate_labeled_graphs(const degree_sequence& d,
                                                   bool connected_only) {
    std::vector<graph> out;
    for_each_labeled_graph(d, connected_only, [&](const std::vector<edge>& edges) {
        std::vector<edge> sorted(edges);
        std::sort(sorted.begin(), sorted.end());
        out.emplace_back(d.size(), std::move(sorted));
    });
    return out;
}

struct ensemble_truth_result {
    degree_sequence d;
    std::optional<std::size_t> n1; // set when quantifying over all labelings of that size
    bool connected_only = false;
    std::size_t graph_count = 0;
    std::set<std::array<std::int64_t, 3>> realized_counts; // distinct (m11, m10, m00)
    std::int64_t m11_min = 0, m11_max = 0;
    std::int64_t m10_min = 0, m10_max = 0;
    std::int64_t m00_min = 0, m00_max = 0;
    std::optional<double> r_min, r_max;
};

namespace detail {

inline void fold_counts(ensemble_truth_result& res, const edge_counts& ec, bool& first) {
    if (first) {
        res.m11_min = res.m11_max = ec.m11;
        res.m10_min = res.m10_max = ec.m10;
        res.m00_min = res.m00_max = ec.m00;
        first = false;
    } else {
        res.m11_min = std::min(res.m11_min, ec.m11);
        res.m11_max = std::max(res.m11_max, ec.m11);
        res.m10_min = std::min(res.m10_min, ec.m10);
        res.m10_max = std::max(res.m10_max, ec.m10);
        res.m00_min = std::min(res.m00_min, ec.m00);
        res.m00_max = std::max(res.m00_max, ec.m00);
    }
    res.realized_counts.insert({ec.m11, ec.m10, ec.m00});
    if (auto r = assortativity_from_counts(ec)) {
        if (!res.r_min || *r < *res.r_min) res.r_min = *r;
        if (!res.r_max || *r > *res.r_max) res.r_max = *r;
    }
}

inline edge_counts counts_under_mask(const std::vector<edge>& edges, std::uint32_t mask) {
    edge_counts ec;
    for (const auto& [u, v] : edges) {
        const int s = ((mask >> u) & 1u) + ((mask >> v) & 1u);
        if (s == 2) ec.m11++;
        else if (s == 1) ec.m10++;
        else ec.m00++;
    }
    return ec;
}

} // namespace detail

// Exact extrema of the edge counts and r over every (graph, labeling) pair
// with class sizes (n1, n - n1).
inline ensemble_truth_result ensemble_truth_mgs(const degree_sequence& d, std::size_t n1,
                                                bool connected_only) {
    const std::size_t n = d.size();
    if (n1 > n) throw parse_error("n1 exceeds node count");
    ensemble_truth_result res;
    res.d = d;
    res.n1 = n1;
    res.connected_only = connected_only;
    bool first = true;
    for_each_labeled_graph(d, connected_only, [&](const std::vector<edge>& edges) {
        res.graph_count++;
        for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
            if (static_cast<std::size_t>(std::popcount(mask)) != n1) continue;
            detail::fold_counts(res, detail::counts_under_mask(edges, mask), first);
        }
    });
    return res;
}

// Exact extrema over every graph under one fixed slot labeling.
inline ensemble_truth_result ensemble_truth_gs(const degree_sequence& d,
                                               const metadata_assignment& a,
                                               bool connected_only) {
    if (a.labels.size() != d.size()) throw length_mismatch_error(a.labels.size(), d.size());
    ensemble_truth_result res;
    res.d = d;
    res.connected_only = connected_only;
    std::uint32_t mask = 0;
    for (std::size_t i = 0; i < a.labels.size(); ++i)
        if (a.labels[i]) mask |= (1u << i);
    bool first = true;
    for_each_labeled_graph(d, connected_only, [&](const std::vector<edge>& edges) {
        res.graph_count++;
        detail::fold_counts(res, detail::counts_under_mask(edges, mask), first);
    });
    return res;
}

} // namespace assort
