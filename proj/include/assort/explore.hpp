#pragma once

#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <numeric>
#include <optional>
#include <string>
#include <thread>
#include <unordered_set>
#include <vector>

#include "bounds.hpp"
#include "error.hpp"
#include "graph.hpp"
#include "mixing.hpp"
#include "rng.hpp"

namespace assort {

enum class explore_method { enumeration, permutation, heuristic, rewiring };
enum class objective_kind { minimize, maximize };
enum class tail_side { upper, lower };

inline const char* to_string(explore_method m) {
    switch (m) {
        case explore_method::enumeration: return "enumeration";
        case explore_method::permutation: return "permutation";
        case explore_method::heuristic: return "heuristic";
        default: return "rewiring";
    }
}
inline const char* to_string(objective_kind o) {
    return o == objective_kind::minimize ? "min" : "max";
}
inline const char* to_string(tail_side s) { return s == tail_side::upper ? "upper" : "lower"; }

inline constexpr std::size_t default_histogram_bins = 100;
inline constexpr std::uint64_t default_enumeration_cap = 2000000;

// Fixed-range histogram over [-1, 1].
struct histogram {
    std::size_t bins = default_histogram_bins;
    std::vector<std::uint64_t> counts;

    explicit histogram(std::size_t bins = default_histogram_bins)
        : bins(bins), counts(bins, 0) {}

    void add(double x) {
        double pos = (x + 1.0) / 2.0 * static_cast<double>(bins);
        auto idx = static_cast<std::int64_t>(pos);
        if (idx < 0) idx = 0;
        if (idx >= static_cast<std::int64_t>(bins)) idx = static_cast<std::int64_t>(bins) - 1;
        counts[static_cast<std::size_t>(idx)]++;
    }
    void merge(const histogram& other) {
        for (std::size_t i = 0; i < bins; ++i) counts[i] += other.counts[i];
    }
    std::vector<double> edges() const {
        std::vector<double> e(bins + 1);
        const double width = 2.0 / static_cast<double>(bins);
        for (std::size_t i = 0; i <= bins; ++i) e[i] = -1.0 + width * static_cast<double>(i);
        return e;
    }
    std::uint64_t total() const {
        return std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
    }
};

struct heuristic_config {
    objective_kind objective = objective_kind::maximize;
    std::uint64_t iterations = 10000;
    std::uint32_t restarts = 10;
    double p_accept = 0.001;
    std::uint64_t seed = 0;
};

struct exploration_report {
    explore_method method = explore_method::enumeration;
    std::string space = "ms";
    std::size_t n1 = 0, n0 = 0;
    std::uint64_t sample_count = 0;    // evaluations with defined r
    std::uint64_t undefined_count = 0; // evaluations with undefined r
    std::optional<double> r_min, r_max, mean_r;
    histogram hist;
    std::optional<std::uint64_t> seed;
    std::optional<double> best_r; // heuristic objective value
};

namespace detail {

// Running statistics for one block of samples; merged in block order so the
// final report is independent of the number of workers.
struct block_stats {
    std::uint64_t defined = 0;
    std::uint64_t undefined = 0;
    double sum = 0;
    double r_min = 0, r_max = 0;
    histogram hist;

    explicit block_stats(std::size_t bins) : hist(bins) {}

    void fold(const std::optional<double>& r) {
        if (!r) {
            undefined++;
            return;
        }
        if (defined == 0) {
            r_min = r_max = *r;
        } else {
            r_min = std::min(r_min, *r);
            r_max = std::max(r_max, *r);
        }
        defined++;
        sum += *r;
        hist.add(*r);
    }
};

inline void merge_blocks(exploration_report& rep, const std::vector<block_stats>& blocks) {
    double sum = 0;
    for (const auto& b : blocks) {
        if (b.defined > 0) {
            if (rep.sample_count == 0) {
                rep.r_min = b.r_min;
                rep.r_max = b.r_max;
            } else {
                rep.r_min = std::min(*rep.r_min, b.r_min);
                rep.r_max = std::max(*rep.r_max, b.r_max);
            }
        }
        rep.sample_count += b.defined;
        rep.undefined_count += b.undefined;
        sum += b.sum;
        rep.hist.merge(b.hist);
    }
    if (rep.sample_count > 0) rep.mean_r = sum / static_cast<double>(rep.sample_count);
}

template <typename Fn>
inline void parallel_blocks(std::size_t nblocks, unsigned threads, Fn&& fn) {
    if (nblocks == 0) return;
    const unsigned workers =
        std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(
                                                     std::min<std::size_t>(nblocks, 512))));
    if (workers == 1) {
        for (std::size_t i = 0; i < nblocks; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::atomic<bool> failed{false};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            while (!failed.load(std::memory_order_relaxed)) {
                const std::size_t i = next.fetch_add(1);
                if (i >= nblocks) break;
                try {
                    fn(i);
                } catch (...) {
                    if (!failed.exchange(true)) first_error = std::current_exception();
                    break;
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

inline double choose_approx(std::size_t n, std::size_t k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    double c = 1;
    for (std::size_t i = 0; i < k; ++i)
        c *= static_cast<double>(n - i) / static_cast<double>(i + 1);
    return c;
}

// Draws a uniform n1-subset as labels, restoring scratch state afterwards.
struct subset_sampler {
    std::vector<std::uint32_t> perm;
    explicit subset_sampler(std::size_t n) : perm(n) {
        std::iota(perm.begin(), perm.end(), 0u);
    }
    void draw(std::mt19937_64& eng, std::size_t n1, std::vector<std::uint8_t>& labels) {
        const std::size_t n = perm.size();
        std::fill(labels.begin(), labels.end(), std::uint8_t{0});
        for (std::size_t j = 0; j < n1; ++j) {
            const std::size_t t = j + static_cast<std::size_t>(bounded(eng, n - j));
            std::swap(perm[j], perm[t]);
            labels[perm[j]] = 1;
        }
    }
};

} // namespace detail

// Evaluates r for every n1-subset of nodes. Deterministic; refuses to start
// when C(n, n1) exceeds cap.
inline exploration_report enumerate_metadata_space(const graph& g, std::size_t n1,
                                                   std::uint64_t cap = default_enumeration_cap,
                                                   std::size_t bins = default_histogram_bins) {
    const std::size_t n = g.node_count();
    if (n1 > n) throw parse_error("n1 exceeds node count");
    const double combos = detail::choose_approx(n, n1);
    if (combos > static_cast<double>(cap)) throw too_many_combinations_error(combos, static_cast<double>(cap));

    exploration_report rep;
    rep.method = explore_method::enumeration;
    rep.space = "ms";
    rep.n1 = n1;
    rep.n0 = n - n1;
    rep.hist = histogram(bins);

    detail::block_stats stats(bins);
    std::vector<std::uint8_t> labels(n, 0);
    std::vector<std::size_t> comb(n1);
    std::iota(comb.begin(), comb.end(), std::size_t{0});
    while (true) {
        std::fill(labels.begin(), labels.end(), std::uint8_t{0});
        for (auto c : comb) labels[c] = 1;
        edge_counts ec;
        for (const auto& [u, v] : g.edges()) {
            const int s = labels[u] + labels[v];
            if (s == 2) ec.m11++;
            else if (s == 1) ec.m10++;
            else ec.m00++;
        }
        stats.fold(g.edge_count() > 0 ? assortativity_from_counts(ec)
                                      : std::optional<double>{});
        // advance to the next combination in lexicographic order
        if (n1 == 0) break;
        std::size_t i = n1;
        while (i > 0 && comb[i - 1] == n - n1 + (i - 1)) --i;
        if (i == 0) break;
        comb[i - 1]++;
        for (std::size_t j = i; j < n1; ++j) comb[j] = comb[j - 1] + 1;
    }
    detail::merge_blocks(rep, {stats});
    return rep;
}

// Uniform random n1-subsets; per-sample substreams keep the result
// independent of the worker count.
inline exploration_report sample_permutations(const graph& g, std::size_t n1,
                                              std::uint64_t samples, std::uint64_t seed,
                                              unsigned threads = 1,
                                              std::size_t bins = default_histogram_bins) {
    const std::size_t n = g.node_count();
    if (n1 > n) throw parse_error("n1 exceeds node count");
    if (samples < 1) throw parse_error("samples must be >= 1");

    constexpr std::uint64_t block_size = 4096;
    const std::size_t nblocks = static_cast<std::size_t>((samples + block_size - 1) / block_size);
    std::vector<detail::block_stats> blocks(nblocks, detail::block_stats(bins));

    detail::parallel_blocks(nblocks, threads, [&](std::size_t b) {
        detail::subset_sampler sampler(n);
        std::vector<std::uint8_t> labels(n, 0);
        const std::uint64_t lo = static_cast<std::uint64_t>(b) * block_size;
        const std::uint64_t hi = std::min(samples, lo + block_size);
        for (std::uint64_t i = lo; i < hi; ++i) {
            auto eng = make_engine(seed, i);
            sampler.draw(eng, n1, labels);
            edge_counts ec;
            for (const auto& [u, v] : g.edges()) {
                const int s = labels[u] + labels[v];
                if (s == 2) ec.m11++;
                else if (s == 1) ec.m10++;
                else ec.m00++;
            }
            blocks[b].fold(g.edge_count() > 0 ? assortativity_from_counts(ec)
                                              : std::optional<double>{});
        }
    });

    exploration_report rep;
    rep.method = explore_method::permutation;
    rep.space = "ms";
    rep.n1 = n1;
    rep.n0 = n - n1;
    rep.hist = histogram(bins);
    rep.seed = seed;
    detail::merge_blocks(rep, blocks);
    return rep;
}

struct pvalue_result {
    exploration_report report;
    double observed_r = 0;
    tail_side side = tail_side::upper;
    std::uint64_t extreme_count = 0;
    std::uint64_t samples = 0;
    double p = 1;
};

// Add-one-smoothed empirical p-value of the observed assignment against
// uniform random label permutations.
inline pvalue_result permutation_pvalue(const graph& g, const metadata_assignment& a,
                                        std::uint64_t samples, std::uint64_t seed,
                                        tail_side side, unsigned threads = 1,
                                        std::size_t bins = default_histogram_bins) {
    if (a.labels.size() != g.node_count())
        throw length_mismatch_error(a.labels.size(), g.node_count());
    if (samples < 1) throw parse_error("samples must be >= 1");
    if (g.edge_count() == 0) throw empty_graph_error();
    const auto observed = assortativity_from_counts(count_edges(g, a));
    if (!observed) throw undefined_observed_error();

    const std::size_t n = g.node_count();
    constexpr std::uint64_t block_size = 4096;
    const std::size_t nblocks = static_cast<std::size_t>((samples + block_size - 1) / block_size);
    std::vector<detail::block_stats> blocks(nblocks, detail::block_stats(bins));
    std::vector<std::uint64_t> extreme(nblocks, 0);

    detail::parallel_blocks(nblocks, threads, [&](std::size_t b) {
        detail::subset_sampler sampler(n);
        std::vector<std::uint8_t> labels(n, 0);
        const std::uint64_t lo = static_cast<std::uint64_t>(b) * block_size;
        const std::uint64_t hi = std::min(samples, lo + block_size);
        for (std::uint64_t i = lo; i < hi; ++i) {
            auto eng = make_engine(seed, i);
            sampler.draw(eng, a.n1, labels);
            edge_counts ec;
            for (const auto& [u, v] : g.edges()) {
                const int s = labels[u] + labels[v];
                if (s == 2) ec.m11++;
                else if (s == 1) ec.m10++;
                else ec.m00++;
            }
            const auto r = assortativity_from_counts(ec);
            blocks[b].fold(r);
            if (r && (side == tail_side::upper ? *r >= *observed : *r <= *observed))
                extreme[b]++;
        }
    });

    pvalue_result res;
    res.report.method = explore_method::permutation;
    res.report.space = "ms";
    res.report.n1 = a.n1;
    res.report.n0 = a.n0;
    res.report.hist = histogram(bins);
    res.report.seed = seed;
    detail::merge_blocks(res.report, blocks);
    res.observed_r = *observed;
    res.side = side;
    res.samples = samples;
    for (auto e : extreme) res.extreme_count += e;
    res.p = (1.0 + static_cast<double>(res.extreme_count)) / (static_cast<double>(samples) + 1.0);
    return res;
}

namespace detail {

struct swap_state {
    std::vector<std::uint8_t> labels;
    std::vector<std::uint32_t> ones, zeros;
    std::vector<std::uint32_t> pos; // index of node within its class vector
    edge_counts ec;

    void init(const graph& g, const std::vector<std::uint8_t>& initial) {
        labels = initial;
        ones.clear();
        zeros.clear();
        pos.assign(labels.size(), 0);
        for (std::uint32_t v = 0; v < labels.size(); ++v) {
            auto& side = labels[v] ? ones : zeros;
            pos[v] = static_cast<std::uint32_t>(side.size());
            side.push_back(v);
        }
        ec = {};
        for (const auto& [u, v] : g.edges()) {
            const int s = labels[u] + labels[v];
            if (s == 2) ec.m11++;
            else if (s == 1) ec.m10++;
            else ec.m00++;
        }
    }

    // Edge-count change from swapping the labels of one-node i and zero-node j.
    edge_counts counts_after_swap(const graph& g, std::uint32_t i, std::uint32_t j) const {
        edge_counts out = ec;
        for (auto w : g.neighbors(i)) {
            if (w == j) continue; // a mixed edge stays mixed
            if (labels[w]) {
                out.m11--;
                out.m10++;
            } else {
                out.m10--;
                out.m00++;
            }
        }
        for (auto w : g.neighbors(j)) {
            if (w == i) continue;
            if (labels[w]) {
                out.m10--;
                out.m11++;
            } else {
                out.m00--;
                out.m10++;
            }
        }
        return out;
    }

    void apply_swap(std::uint32_t i, std::uint32_t j, const edge_counts& counts) {
        const std::uint32_t pi = pos[i], pj = pos[j];
        ones[pi] = j;
        zeros[pj] = i;
        pos[i] = pj;
        pos[j] = pi;
        labels[i] = 0;
        labels[j] = 1;
        ec = counts;
    }
};

} // namespace detail

// Stochastic label-swap search for extremal r in the metadata space.
// Each restart runs on its own substream; non-improving swaps are accepted
// with probability p_accept. Reports the best r ever evaluated.
inline exploration_report swap_heuristic(const graph& g, std::size_t n1,
                                         const heuristic_config& cfg, unsigned threads = 1,
                                         const std::optional<metadata_assignment>& initial = {},
                                         std::size_t bins = default_histogram_bins) {
    const std::size_t n = g.node_count();
    if (n1 == 0 || n1 >= n)
        throw degenerate_partition_error("swap heuristic needs 0 < n1 < n, got n1 = " +
                                         std::to_string(n1));
    if (cfg.iterations < 1) throw parse_error("iterations must be >= 1");
    if (cfg.p_accept < 0 || cfg.p_accept > 1) throw parse_error("p-accept must lie in [0, 1]");
    if (cfg.restarts < 1) throw parse_error("restarts must be >= 1");
    if (initial) {
        if (initial->labels.size() != n) throw length_mismatch_error(initial->labels.size(), n);
        if (initial->n1 != n1)
            throw parse_error("initial assignment has n1 = " + std::to_string(initial->n1) +
                              ", expected " + std::to_string(n1));
    }

    const bool maximize = cfg.objective == objective_kind::maximize;
    std::vector<detail::block_stats> blocks(cfg.restarts, detail::block_stats(bins));
    std::vector<std::optional<double>> best(cfg.restarts);

    detail::parallel_blocks(cfg.restarts, threads, [&](std::size_t restart) {
        auto eng = make_engine(cfg.seed, restart);
        detail::subset_sampler sampler(n);
        std::vector<std::uint8_t> labels(n, 0);
        if (initial) labels = initial->labels;
        else sampler.draw(eng, n1, labels);

        detail::swap_state state;
        state.init(g, labels);
        auto current = g.edge_count() > 0 ? assortativity_from_counts(state.ec)
                                          : std::optional<double>{};
        blocks[restart].fold(current);
        auto& local_best = best[restart];
        auto consider = [&](const std::optional<double>& r) {
            if (!r) return;
            if (!local_best || (maximize ? *r > *local_best : *r < *local_best)) local_best = *r;
        };
        consider(current);

        for (std::uint64_t it = 0; it < cfg.iterations; ++it) {
            const std::uint32_t i =
                state.ones[static_cast<std::size_t>(bounded(eng, state.ones.size()))];
            const std::uint32_t j =
                state.zeros[static_cast<std::size_t>(bounded(eng, state.zeros.size()))];
            const edge_counts cand = state.counts_after_swap(g, i, j);
            const auto r = g.edge_count() > 0 ? assortativity_from_counts(cand)
                                              : std::optional<double>{};
            blocks[restart].fold(r);
            consider(r);
            bool improves = false;
            if (r && current)
                improves = maximize ? *r > *current : *r < *current;
            else if (r && !current)
                improves = true;
            const bool accept =
                improves ||
                static_cast<double>(eng()) / static_cast<double>(UINT64_MAX) < cfg.p_accept;
            if (accept) {
                state.apply_swap(i, j, cand);
                current = r;
            }
        }
    });

    exploration_report rep;
    rep.method = explore_method::heuristic;
    rep.space = "ms";
    rep.n1 = n1;
    rep.n0 = n - n1;
    rep.hist = histogram(bins);
    rep.seed = cfg.seed;
    detail::merge_blocks(rep, blocks);
    for (const auto& b : best) {
        if (!b) continue;
        if (!rep.best_r || (maximize ? *b > *rep.best_r : *b < *rep.best_r)) rep.best_r = *b;
    }
    return rep;
}

// Degree-preserving double-edge-swap sampling of the graph space under a
// fixed assignment. Each sample walks `swaps` accepted swaps from the
// observed graph (bounded attempts, so rigid graphs terminate).
inline exploration_report rewire_graph_space(const graph& g, const metadata_assignment& a,
                                             std::uint64_t swaps, std::uint64_t samples,
                                             std::uint64_t seed, unsigned threads = 1,
                                             std::size_t bins = default_histogram_bins) {
    if (a.labels.size() != g.node_count())
        throw length_mismatch_error(a.labels.size(), g.node_count());
    if (g.edge_count() < 2) throw parse_error("rewiring needs at least 2 edges");
    if (samples < 1) throw parse_error("samples must be >= 1");

    const std::uint64_t m = g.edge_count();
    const std::uint64_t attempt_cap = std::max<std::uint64_t>(100, 20 * m);
    constexpr std::uint64_t block_size = 64;
    const std::size_t nblocks = static_cast<std::size_t>((samples + block_size - 1) / block_size);
    std::vector<detail::block_stats> blocks(nblocks, detail::block_stats(bins));

    const auto pack = [](node_id u, node_id v) {
        return (static_cast<std::uint64_t>(std::min(u, v)) << 32) | std::max(u, v);
    };

    detail::parallel_blocks(nblocks, threads, [&](std::size_t b) {
        const std::uint64_t lo = static_cast<std::uint64_t>(b) * block_size;
        const std::uint64_t hi = std::min(samples, lo + block_size);
        for (std::uint64_t si = lo; si < hi; ++si) {
            auto eng = make_engine(seed, si);
            std::vector<edge> edges = g.edges();
            std::unordered_set<std::uint64_t> present;
            present.reserve(edges.size() * 2);
            for (const auto& [u, v] : edges) present.insert(pack(u, v));

            for (std::uint64_t s = 0; s < swaps; ++s) {
                bool done = false;
                for (std::uint64_t attempt = 0; attempt < attempt_cap && !done; ++attempt) {
                    const auto e1 = static_cast<std::size_t>(bounded(eng, m));
                    const auto e2 = static_cast<std::size_t>(bounded(eng, m));
                    if (e1 == e2) continue;
                    auto [a1, b1] = edges[e1];
                    auto [a2, b2] = edges[e2];
                    if (eng() & 1u) std::swap(a2, b2);
                    // proposed replacement: (a1, b2) and (a2, b1)
                    if (a1 == b2 || a2 == b1 || a1 == a2 || b1 == b2) continue;
                    const std::uint64_t k1 = pack(a1, b2), k2 = pack(a2, b1);
                    if (present.contains(k1) || present.contains(k2)) continue;
                    present.erase(pack(a1, b1));
                    present.erase(pack(a2, b2));
                    present.insert(k1);
                    present.insert(k2);
                    edges[e1] = {std::min(a1, b2), std::max(a1, b2)};
                    edges[e2] = {std::min(a2, b1), std::max(a2, b1)};
                    done = true;
                }
                if (!done) break; // no admissible swap found within the attempt budget
            }

            edge_counts ec;
            for (const auto& [u, v] : edges) {
                const int s = a.labels[u] + a.labels[v];
                if (s == 2) ec.m11++;
                else if (s == 1) ec.m10++;
                else ec.m00++;
            }
            blocks[b].fold(assortativity_from_counts(ec));
        }
    });

    exploration_report rep;
    rep.method = explore_method::rewiring;
    rep.space = "gs";
    rep.n1 = a.n1;
    rep.n0 = a.n0;
    rep.hist = histogram(bins);
    rep.seed = seed;
    detail::merge_blocks(rep, blocks);
    return rep;
}

} // namespace assort
