#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "error.hpp"
#include "graph.hpp"
#include "mixing.hpp"

namespace assort {

enum class space_tag { mgs, gs };
enum class bound_variant { improved, original };

inline const char* to_string(space_tag s) { return s == space_tag::mgs ? "mgs" : "gs"; }

// Fixed split of a degree multiset into the class-1 and class-0 degrees.
struct degree_partition {
    degree_sequence part1;
    degree_sequence part0;

    static degree_partition from_assignment(const graph& g, const metadata_assignment& a) {
        if (a.labels.size() != g.node_count())
            throw length_mismatch_error(a.labels.size(), g.node_count());
        std::vector<std::size_t> d1, d0;
        for (std::size_t v = 0; v < g.node_count(); ++v)
            (a.labels[v] ? d1 : d0).push_back(g.degree(static_cast<node_id>(v)));
        return {degree_sequence(std::move(d1)), degree_sequence(std::move(d0))};
    }

    std::size_t n1() const { return part1.size(); }
    std::size_t n0() const { return part0.size(); }
    std::int64_t m() const { return static_cast<std::int64_t>(part1.sum() + part0.sum()) / 2; }
};

struct edge_count_bounds {
    space_tag space = space_tag::mgs;
    std::int64_t m = 0;
    std::int64_t m11_lower = 0, m11_upper = 0;
    std::int64_t m10_lower = 0, m10_upper = 0;
    std::int64_t m00_lower = 0, m00_upper = 0;
};

struct count_triple {
    std::int64_t m11 = 0, m10 = 0, m00 = 0;
    edge_counts to_edge_counts() const { return {m11, m10, m00}; }
};

// One evaluated lower-bound candidate. Both slack conditions are recorded
// for every candidate so the gating is auditable: case 2 requires
// m10_upper + m11_lower <= m, case 3 requires m10_upper + m00_lower <= m,
// case 1 requires neither.
struct candidate_record {
    int case_id = 0;
    count_triple counts;
    bool guard_m11 = false;
    bool guard_m00 = false;
    bool feasible = false;
    std::optional<double> r;
};

struct assortativity_range_result {
    space_tag space = space_tag::mgs;
    double r_lower = 0;
    double r_upper = 0;
    count_triple realizing_lower;
    // Balanced split realizing the upper bound; the two triples differ only
    // when m - m10_lower is odd.
    count_triple realizing_upper_low;
    count_triple realizing_upper_high;
    std::vector<candidate_record> candidate_log;
};

namespace detail {

inline std::int64_t sum_capped(const std::vector<std::size_t>& ds, std::size_t cap) {
    std::int64_t s = 0;
    for (auto d : ds) s += static_cast<std::int64_t>(std::min(d, cap));
    return s;
}

inline std::int64_t sum_residual(const std::vector<std::size_t>& ds, std::size_t k) {
    // sum of max(0, d - (k - 1))
    std::int64_t s = 0;
    for (auto d : ds)
        if (d + 1 > k) s += static_cast<std::int64_t>(d + 1 - k);
    return s;
}

inline std::int64_t sum_plain(const std::vector<std::size_t>& ds) {
    std::int64_t s = 0;
    for (auto d : ds) s += static_cast<std::int64_t>(d);
    return s;
}

inline std::int64_t choose2(std::size_t k) {
    return static_cast<std::int64_t>(k) * (static_cast<std::int64_t>(k) - 1) / 2;
}

// Degrees feeding each bound: for mgs the head/tail of the full sequence,
// for gs the fixed class parts.
struct bound_inputs {
    std::vector<std::size_t> ones_max;   // degree-sum-maximising choice of the n1 class
    std::vector<std::size_t> ones_min;   // degree-sum-minimising choice
    std::vector<std::size_t> zeros_max;
    std::vector<std::size_t> zeros_min;
    std::vector<std::size_t> all;
    std::size_t n1 = 0, n0 = 0;
    std::int64_t m = 0;
};

inline bound_inputs mgs_inputs(const degree_sequence& d, std::size_t n1) {
    if (n1 > d.size())
        throw parse_error("n1 = " + std::to_string(n1) + " exceeds node count " +
                          std::to_string(d.size()));
    const std::size_t n0 = d.size() - n1;
    bound_inputs in;
    in.ones_max = d.head(n1);
    in.ones_min = d.tail(n1);
    in.zeros_max = d.head(n0);
    in.zeros_min = d.tail(n0);
    in.all = d.values();
    in.n1 = n1;
    in.n0 = n0;
    in.m = static_cast<std::int64_t>(d.sum()) / 2;
    return in;
}

inline bound_inputs gs_inputs(const degree_partition& p) {
    bound_inputs in;
    in.ones_max = in.ones_min = p.part1.values();
    in.zeros_max = in.zeros_min = p.part0.values();
    in.all = p.part1.values();
    in.all.insert(in.all.end(), p.part0.values().begin(), p.part0.values().end());
    in.n1 = p.n1();
    in.n0 = p.n0();
    in.m = p.m();
    return in;
}

inline std::int64_t m11_upper(const bound_inputs& in) {
    const std::int64_t capped = sum_capped(in.ones_max, in.n1 > 0 ? in.n1 - 1 : 0);
    return std::min({in.m, choose2(in.n1), (capped + 1) / 2});
}

inline std::int64_t m10_upper(const bound_inputs& in) {
    const std::int64_t from_ones = sum_capped(in.ones_max, in.n0);
    const std::int64_t from_zeros = sum_capped(in.zeros_max, in.n1);
    return std::min({in.m, static_cast<std::int64_t>(in.n1) * static_cast<std::int64_t>(in.n0),
                     std::min(from_ones, from_zeros)});
}

inline std::int64_t m11_lower(const bound_inputs& in, bound_variant variant) {
    const std::int64_t tail1 = sum_plain(in.ones_min);
    const std::int64_t head0 = variant == bound_variant::improved
                                   ? sum_capped(in.zeros_max, in.n1)
                                   : sum_plain(in.zeros_max);
    const std::int64_t diff = tail1 - head0;
    return diff > 0 ? diff / 2 : 0;
}

inline std::int64_t m10_lower(const bound_inputs& in, bound_variant variant, space_tag space) {
    if (in.n1 == 0 || in.n0 == 0) return 0;
    if (variant == bound_variant::original) {
        const std::int64_t excess = sum_plain(in.ones_min) -
                                    static_cast<std::int64_t>(in.n1) *
                                        (static_cast<std::int64_t>(in.n1) - 1);
        return std::max<std::int64_t>(1, excess);
    }
    const std::int64_t t1 = sum_residual(in.ones_min, in.n1);
    const std::int64_t t0 = sum_residual(in.zeros_min, in.n0);
    std::int64_t best = std::max<std::int64_t>({1, t1, t0});
    if (space == space_tag::mgs) {
        const std::int64_t global = sum_residual(in.all, std::max(in.n1, in.n0)) / 2;
        best = std::max(best, global);
    }
    return best;
}

inline bound_inputs flipped(const bound_inputs& in) {
    bound_inputs out;
    out.ones_max = in.zeros_max;
    out.ones_min = in.zeros_min;
    out.zeros_max = in.ones_max;
    out.zeros_min = in.ones_min;
    out.all = in.all;
    out.n1 = in.n0;
    out.n0 = in.n1;
    out.m = in.m;
    return out;
}

inline edge_count_bounds bounds_from_inputs(const bound_inputs& in, space_tag space,
                                            bound_variant variant) {
    const bound_inputs flip = flipped(in);
    edge_count_bounds b;
    b.space = space;
    b.m = in.m;
    b.m11_upper = m11_upper(in);
    b.m11_lower = m11_lower(in, variant);
    b.m10_upper = m10_upper(in);
    b.m10_lower = m10_lower(in, variant, space);
    b.m00_upper = m11_upper(flip);
    b.m00_lower = m11_lower(flip, variant);
    return b;
}

} // namespace detail

// Bounds over all graphs with degree sequence d and all labelings with class
// sizes (n1, n - n1).
inline edge_count_bounds compute_bounds_mgs(const degree_sequence& d, std::size_t n1,
                                            bound_variant variant = bound_variant::improved) {
    return detail::bounds_from_inputs(detail::mgs_inputs(d, n1), space_tag::mgs, variant);
}

// Bounds over all graphs with degree sequence d under one fixed labeling,
// given as the induced degree partition.
inline edge_count_bounds compute_bounds_gs(const degree_partition& p,
                                           bound_variant variant = bound_variant::improved) {
    return detail::bounds_from_inputs(detail::gs_inputs(p), space_tag::gs, variant);
}

// Individual bound accessors matching the published operation granularity.
inline std::int64_t m11_upper(const degree_sequence& d, std::size_t n1) {
    return detail::m11_upper(detail::mgs_inputs(d, n1));
}
inline std::int64_t m11_upper(const degree_partition& p) {
    return detail::m11_upper(detail::gs_inputs(p));
}
inline std::int64_t m10_upper(const degree_sequence& d, std::size_t n1) {
    return detail::m10_upper(detail::mgs_inputs(d, n1));
}
inline std::int64_t m10_upper(const degree_partition& p) {
    return detail::m10_upper(detail::gs_inputs(p));
}
inline std::int64_t m11_lower(const degree_sequence& d, std::size_t n1,
                              bound_variant variant = bound_variant::improved) {
    return detail::m11_lower(detail::mgs_inputs(d, n1), variant);
}
inline std::int64_t m11_lower(const degree_partition& p,
                              bound_variant variant = bound_variant::improved) {
    return detail::m11_lower(detail::gs_inputs(p), variant);
}
inline std::int64_t m10_lower(const degree_sequence& d, std::size_t n1,
                              bound_variant variant = bound_variant::improved) {
    return detail::m10_lower(detail::mgs_inputs(d, n1), variant, space_tag::mgs);
}
inline std::int64_t m10_lower(const degree_partition& p,
                              bound_variant variant = bound_variant::improved) {
    return detail::m10_lower(detail::gs_inputs(p), variant, space_tag::gs);
}

// r_upper = 1 - 2 m10_lower / m, attained at the balanced split
// m11 = m00 = (m - m10_lower) / 2 (reported as both integer splits when odd).
inline void apply_assortativity_upper(assortativity_range_result& out,
                                      const edge_count_bounds& b) {
    const double m = static_cast<double>(b.m);
    out.r_upper = 1.0 - 2.0 * static_cast<double>(b.m10_lower) / m;
    const std::int64_t rest = b.m - b.m10_lower;
    out.realizing_upper_low = {rest / 2, b.m10_lower, rest - rest / 2};
    out.realizing_upper_high = {rest - rest / 2, b.m10_lower, rest / 2};
}

// Evaluates the three candidate count triples and keeps the feasible minimum.
inline void apply_assortativity_lower(assortativity_range_result& out,
                                      const edge_count_bounds& b) {
    const std::int64_t m = b.m;
    const bool guard_m11 = b.m10_upper + b.m11_lower <= m;
    const bool guard_m00 = b.m10_upper + b.m00_lower <= m;

    const count_triple cands[3] = {
        {b.m11_lower, m - b.m11_lower - b.m00_lower, b.m00_lower},
        {b.m11_lower, b.m10_upper, m - b.m10_upper - b.m11_lower},
        {m - b.m10_upper - b.m00_lower, b.m10_upper, b.m00_lower},
    };
    const bool gates[3] = {true, guard_m11, guard_m00};

    bool found = false;
    for (int c = 0; c < 3; ++c) {
        candidate_record rec;
        rec.case_id = c + 1;
        rec.counts = cands[c];
        rec.guard_m11 = guard_m11;
        rec.guard_m00 = guard_m00;
        if (gates[c] && rec.counts.m11 >= 0 && rec.counts.m10 >= 0 && rec.counts.m00 >= 0) {
            rec.r = assortativity_from_counts(rec.counts.to_edge_counts());
            rec.feasible = rec.r.has_value();
        }
        if (rec.feasible && (!found || *rec.r < out.r_lower)) {
            out.r_lower = *rec.r;
            out.realizing_lower = rec.counts;
            found = true;
        }
        out.candidate_log.push_back(rec);
    }
    if (!found)
        throw no_feasible_candidate_error("all candidate count triples are infeasible for m = " +
                                          std::to_string(m));
}

inline assortativity_range_result assortativity_range(const edge_count_bounds& b) {
    if (b.m <= 0) throw empty_graph_error();
    assortativity_range_result out;
    out.space = b.space;
    apply_assortativity_upper(out, b);
    apply_assortativity_lower(out, b);
    return out;
}

inline assortativity_range_result assortativity_range_mgs(
    const degree_sequence& d, std::size_t n1, bound_variant variant = bound_variant::improved) {
    if (n1 == 0 || n1 >= d.size())
        throw degenerate_partition_error("assortativity bounds need 0 < n1 < n, got n1 = " +
                                         std::to_string(n1));
    return assortativity_range(compute_bounds_mgs(d, n1, variant));
}

inline assortativity_range_result assortativity_range_gs(
    const degree_partition& p, bound_variant variant = bound_variant::improved) {
    if (p.n1() == 0 || p.n0() == 0)
        throw degenerate_partition_error("assortativity bounds need both classes non-empty");
    return assortativity_range(compute_bounds_gs(p, variant));
}

inline assortativity_range_result assortativity_range_mgs(const graph& g, std::size_t n1,
                                                          bound_variant variant =
                                                              bound_variant::improved) {
    return assortativity_range_mgs(make_degree_sequence(g), n1, variant);
}

inline assortativity_range_result assortativity_range_gs(const graph& g,
                                                         const metadata_assignment& a,
                                                         bound_variant variant =
                                                             bound_variant::improved) {
    return assortativity_range_gs(degree_partition::from_assignment(g, a), variant);
}

// r / r_upper when r > 0, r / r_lower otherwise.
inline double normalize_assortativity(double r, const assortativity_range_result& range) {
    const double bound = r > 0 ? range.r_upper : range.r_lower;
    if (bound == 0) throw zero_bound_error();
    return r / bound;
}

} // namespace assort
