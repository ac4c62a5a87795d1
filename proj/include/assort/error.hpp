#pragma once

#include <stdexcept>
#include <string>

namespace assort {

// Base of all library errors.
struct error : std::runtime_error {
    explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed input: files, raw edge lists, bad argument combinations.
// CLI exit code 2.
struct parse_error : error {
    using error::error;
};

struct self_loop_error : parse_error {
    explicit self_loop_error(std::size_t node)
        : parse_error("self loop at node index " + std::to_string(node)), node(node) {}
    std::size_t node;
};

struct duplicate_edge_error : parse_error {
    duplicate_edge_error(std::size_t u, std::size_t v)
        : parse_error("duplicate edge (" + std::to_string(u) + ", " + std::to_string(v) +
                      "); pass dedupe to collapse"),
          u(u), v(v) {}
    std::size_t u, v;
};

struct index_out_of_range_error : parse_error {
    index_out_of_range_error(std::size_t index, std::size_t n)
        : parse_error("node index " + std::to_string(index) + " out of range [0, " +
                      std::to_string(n) + ")") {}
};

struct length_mismatch_error : parse_error {
    length_mismatch_error(std::size_t got, std::size_t want)
        : parse_error("label vector has " + std::to_string(got) + " entries, graph has " +
                      std::to_string(want) + " nodes") {}
};

struct invalid_partition_error : parse_error {
    explicit invalid_partition_error(const std::string& msg)
        : parse_error("invalid degree partition: " + msg) {}
};

struct not_graphical_error : parse_error {
    explicit not_graphical_error(const std::string& msg)
        : parse_error("degree sequence is not graphical: " + msg) {}
};

struct too_large_error : parse_error {
    too_large_error(std::size_t n, std::size_t cap)
        : parse_error("exhaustive enumeration supports at most " + std::to_string(cap) +
                      " nodes, got " + std::to_string(n)) {}
};

struct too_many_combinations_error : parse_error {
    too_many_combinations_error(double combinations, double cap)
        : parse_error("C(n, n1) = " + std::to_string(combinations) + " exceeds cap " +
                      std::to_string(cap) + "; use the heuristic subcommand instead"),
          combinations(combinations), cap(cap) {}
    double combinations, cap;
};

// A partition with n1 in {0, n}: bounds and swaps are undefined.
// CLI exit code 3.
struct degenerate_partition_error : error {
    explicit degenerate_partition_error(const std::string& msg) : error(msg) {}
};

// A quantity that is mathematically undefined for the given input.
// CLI exit code 4.
struct undefined_result_error : error {
    explicit undefined_result_error(const std::string& msg) : error(msg) {}
};

struct empty_graph_error : undefined_result_error {
    empty_graph_error() : undefined_result_error("graph has no edges") {}
};

struct no_feasible_candidate_error : undefined_result_error {
    explicit no_feasible_candidate_error(const std::string& msg)
        : undefined_result_error("no feasible lower-bound candidate: " + msg) {}
};

struct zero_bound_error : undefined_result_error {
    zero_bound_error()
        : undefined_result_error("normalization bound is zero") {}
};

struct undefined_observed_error : undefined_result_error {
    undefined_observed_error()
        : undefined_result_error("observed assortativity is undefined (single-class edge set)") {}
};

} // namespace assort
