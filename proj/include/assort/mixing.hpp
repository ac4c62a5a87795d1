#pragma once

#include <cmath>
#include <cstdint>
#include <optional>

#include "error.hpp"
#include "graph.hpp"

namespace assort {

// 2x2 edge-proportion table with row marginals a_i and column marginals b_j.
struct contingency_table {
    double e11 = 0, e10 = 0, e01 = 0, e00 = 0;
    double a1() const { return e11 + e10; }
    double a0() const { return e01 + e00; }
    double b1() const { return e11 + e01; }
    double b0() const { return e10 + e00; }
};

struct phi_range {
    double min = 0, max = 0;
};

struct segregation_result {
    double expected_cross = 0;
    std::int64_t observed_cross = 0;
    double S = 0;
};

// e11 = m11/m, e00 = m00/m, e10 = e01 = m10/(2m); marginals come out symmetric.
inline contingency_table contingency_from_counts(const edge_counts& ec) {
    const double m = static_cast<double>(ec.m());
    if (ec.m() <= 0) throw empty_graph_error();
    contingency_table t;
    t.e11 = static_cast<double>(ec.m11) / m;
    t.e00 = static_cast<double>(ec.m00) / m;
    t.e10 = t.e01 = static_cast<double>(ec.m10) / (2.0 * m);
    return t;
}

// phi = (e11 - a1 b1) / sqrt(a1 a0 b1 b0); empty when a marginal vanishes.
inline std::optional<double> phi_coefficient(const contingency_table& t) {
    const double denom2 = t.a1() * t.a0() * t.b1() * t.b0();
    if (denom2 <= 0) return std::nullopt;
    return (t.e11 - t.a1() * t.b1()) / std::sqrt(denom2);
}

// Determinant form of the same quantity: (e11 e00 - e01 e10) / sqrt(a1 a0 b1 b0).
inline std::optional<double> phi_determinant(const contingency_table& t) {
    const double denom2 = t.a1() * t.a0() * t.b1() * t.b0();
    if (denom2 <= 0) return std::nullopt;
    return (t.e11 * t.e00 - t.e01 * t.e10) / std::sqrt(denom2);
}

// Marginal-only bounds on phi, after relabeling classes so that a0 <= a1.
inline std::optional<phi_range> phi_bounds(double a0, double a1, double b0, double b1) {
    if (a0 <= 0 || a1 <= 0 || b0 <= 0 || b1 <= 0) return std::nullopt;
    if (a0 > a1) {
        std::swap(a0, a1);
        std::swap(b0, b1);
    }
    return phi_range{-std::sqrt(a0 * b0 / (a1 * b1)), std::sqrt(a0 * b1 / (a1 * b0))};
}

// r = (sum_i e_ii - a_i^2) / (1 - sum_i a_i^2); empty when all mass sits in one class.
inline std::optional<double> assortativity_from_contingency(const contingency_table& t) {
    const double sum_sq = t.a1() * t.a1() + t.a0() * t.a0();
    const double denom = 1.0 - sum_sq;
    if (denom == 0) return std::nullopt;
    return (t.e11 + t.e00 - sum_sq) / denom;
}

// Long count form:
// r = ((m00+m11)m - (m00+m10/2)^2 - (m11+m10/2)^2) / (m^2 - (m00+m10/2)^2 - (m11+m10/2)^2).
inline std::optional<double> assortativity_long_form(const edge_counts& ec) {
    const double m = static_cast<double>(ec.m());
    if (ec.m() <= 0) throw empty_graph_error();
    const double h = static_cast<double>(ec.m10) / 2.0;
    const double q0 = static_cast<double>(ec.m00) + h;
    const double q1 = static_cast<double>(ec.m11) + h;
    const double denom = m * m - q0 * q0 - q1 * q1;
    if (denom == 0) return std::nullopt;
    return (static_cast<double>(ec.m00 + ec.m11) * m - q0 * q0 - q1 * q1) / denom;
}

// Simplified form: r = 1 - 2 m10 m / (m^2 - (m00 - m11)^2).
// Empty exactly when m10 = 0 and one of m11, m00 equals m (single-class edge set).
inline std::optional<double> assortativity_from_counts(const edge_counts& ec) {
    const std::int64_t m = ec.m();
    if (m <= 0) throw empty_graph_error();
    const std::int64_t diff = ec.m00 - ec.m11;
    const std::int64_t denom = m * m - diff * diff;
    if (denom == 0) return std::nullopt;
    return 1.0 - 2.0 * static_cast<double>(ec.m10) * static_cast<double>(m) /
                     static_cast<double>(denom);
}

// Marginal-only lower bound -sum a_i^2 / (1 - sum a_i^2);
// attainable only if a perfectly mixed edge set exists.
inline std::optional<double> newman_naive_min(double a0, double a1) {
    const double sum_sq = a0 * a0 + a1 * a1;
    if (sum_sq <= 0 || sum_sq >= 1) return std::nullopt;
    return -sum_sq / (1.0 - sum_sq);
}

// Shortfall of observed cross-class edges against the random-labeling
// expectation E[m10] = m * 2 n1 n0 / (n (n-1)), clamped to [0, 1].
inline segregation_result freeman_segregation(const graph& g, const metadata_assignment& a) {
    if (a.labels.size() != g.node_count())
        throw length_mismatch_error(a.labels.size(), g.node_count());
    if (a.n1 == 0 || a.n0 == 0)
        throw degenerate_partition_error("segregation needs both label classes present");
    if (g.edge_count() == 0) throw empty_graph_error();
    const double n = static_cast<double>(g.node_count());
    const double expected = static_cast<double>(g.edge_count()) * 2.0 *
                            static_cast<double>(a.n1) * static_cast<double>(a.n0) /
                            (n * (n - 1.0));
    const edge_counts ec = count_edges(g, a);
    segregation_result res;
    res.expected_cross = expected;
    res.observed_cross = ec.m10;
    const double shortfall = (expected - static_cast<double>(ec.m10)) / expected;
    res.S = shortfall > 0 ? shortfall : 0.0;
    return res;
}

} // namespace assort
