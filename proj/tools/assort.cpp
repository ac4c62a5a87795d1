#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <string>

#include <CLI11.hpp>

#include <assort/assort.hpp>

namespace {

using assort::ordered_json;

unsigned resolve_threads(unsigned requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("ASSORT_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v > 0) return static_cast<unsigned>(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& seed) {
    if (seed) return *seed;
    std::random_device rd;
    const std::uint64_t s = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
    std::cerr << "seed: " << s << "\n";
    return s;
}

std::size_t resolve_n1(const assort::graph& g,
                       const std::optional<assort::metadata_assignment>& meta,
                       const std::optional<std::size_t>& n1_flag) {
    std::size_t n1 = 0;
    if (n1_flag) {
        if (meta && meta->n1 != *n1_flag)
            throw assort::parse_error("--n1 " + std::to_string(*n1_flag) +
                                      " conflicts with metadata (n1 = " +
                                      std::to_string(meta->n1) + ")");
        if (*n1_flag > g.node_count())
            throw assort::parse_error("--n1 exceeds node count");
        n1 = *n1_flag;
    } else if (meta) {
        n1 = meta->n1;
    } else {
        throw assort::parse_error("need --meta or --n1");
    }
    if (n1 == 0 || n1 == g.node_count())
        throw assort::degenerate_partition_error("n1 = " + std::to_string(n1) +
                                                 " leaves a single label class");
    return n1;
}

void emit_report(const ordered_json& j, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << j.dump(2) << "\n";
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) throw assort::parse_error("cannot open output file '" + out_path + "'");
        out << j.dump(2) << "\n";
    }
}

void emit_csv(const std::string& csv_path, const assort::histogram& h) {
    if (csv_path.empty()) return;
    std::ofstream out(csv_path, std::ios::binary);
    if (!out) throw assort::parse_error("cannot open CSV file '" + csv_path + "'");
    assort::write_histogram_csv(out, h);
}

std::ostream& summary_stream(const std::string& out_path) {
    return out_path.empty() ? std::cerr : std::cout;
}

std::string fmt(const std::optional<double>& v) {
    if (!v) return "undefined";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", *v);
    return buf;
}

struct common_options {
    std::string graph_path;
    std::string meta_path;
    std::string out_path;
    std::string csv_path;
    bool summary = false;
    bool dedupe = false;
    bool symmetrize = false;
    std::optional<std::size_t> n1;
    std::size_t bins = assort::default_histogram_bins;
    unsigned threads = 0;
    std::optional<std::uint64_t> seed;
};

void add_input_options(CLI::App* cmd, common_options& o, bool with_n1 = true) {
    cmd->add_option("graph", o.graph_path, "edge list file (two node tokens per line)")
        ->required();
    cmd->add_option("--meta", o.meta_path, "metadata file (node<TAB>label, label in {0,1})");
    if (with_n1) cmd->add_option("--n1", o.n1, "number of 1-labeled nodes");
    cmd->add_flag("--dedupe", o.dedupe, "collapse exact duplicate edges");
    cmd->add_flag("--symmetrize", o.symmetrize, "collapse reversed duplicate edges");
    cmd->add_option("--out", o.out_path, "write the JSON report here instead of stdout");
    cmd->add_flag("--summary", o.summary, "also print a human-readable summary");
}

struct loaded_input {
    assort::graph g;
    std::optional<assort::metadata_assignment> meta;
};

loaded_input load(const common_options& o) {
    assort::graph_options gopts;
    gopts.dedupe = o.dedupe;
    gopts.symmetrize = o.symmetrize;
    loaded_input in{assort::parse_edge_list_file(o.graph_path, gopts), {}};
    if (!o.meta_path.empty()) in.meta = assort::parse_metadata_file(o.meta_path, in.g);
    return in;
}

std::optional<double> safe_normalized(const std::optional<double>& r,
                                      const assort::assortativity_range_result& range) {
    if (!r) return std::nullopt;
    try {
        return assort::normalize_assortativity(*r, range);
    } catch (const assort::zero_bound_error&) {
        return std::nullopt;
    }
}

int run_bounds(const common_options& o, const std::string& space, const std::string& variant) {
    const auto in = load(o);
    const bool want_gs = space == "gs" || space == "all";
    const bool want_mgs = space == "mgs" || space == "all";
    if (want_gs && !in.meta)
        throw assort::parse_error("--space " + space + " needs --meta");

    const auto var = variant == "original" ? assort::bound_variant::original
                                           : assort::bound_variant::improved;
    const std::size_t n1 = resolve_n1(in.g, in.meta, o.n1);
    const auto d = assort::make_degree_sequence(in.g);

    std::optional<double> observed_r;
    ordered_json observed(nullptr);
    if (in.meta) {
        const auto ec = assort::count_edges(in.g, *in.meta);
        observed_r = assort::assortativity_from_counts(ec);
        if (!observed_r) throw assort::undefined_observed_error();
        const auto seg = assort::freeman_segregation(in.g, *in.meta);
        observed = ordered_json{{"m11", ec.m11},
                                {"m10", ec.m10},
                                {"m00", ec.m00},
                                {"m", ec.m()},
                                {"r", *observed_r},
                                {"segregation",
                                 {{"expected_cross", seg.expected_cross},
                                  {"observed_cross", seg.observed_cross},
                                  {"S", seg.S}}}};
    }

    ordered_json j = assort::report_header("bounds");
    j["input"] = assort::input_digest(in.g, n1, true);
    j["config"] = {{"space", space}, {"variant", variant}};
    j["seed"] = nullptr;
    j["observed"] = observed;
    ordered_json spaces;
    spaces["mgs"] = nullptr;
    spaces["gs"] = nullptr;

    std::optional<assort::assortativity_range_result> mgs_range, gs_range;
    if (want_mgs) {
        const auto b = assort::compute_bounds_mgs(d, n1, var);
        mgs_range = assort::assortativity_range(b);
        spaces["mgs"] = assort::space_json(b, *mgs_range, safe_normalized(observed_r, *mgs_range));
    }
    if (want_gs) {
        const auto p = assort::degree_partition::from_assignment(in.g, *in.meta);
        if (p.n1() == 0 || p.n0() == 0)
            throw assort::degenerate_partition_error("bounds need both label classes present");
        const auto b = assort::compute_bounds_gs(p, var);
        gs_range = assort::assortativity_range(b);
        spaces["gs"] = assort::space_json(b, *gs_range, safe_normalized(observed_r, *gs_range));
    }
    j["spaces"] = spaces;
    j["exploration"] = nullptr;

    emit_report(j, o.out_path);
    if (o.summary) {
        auto& s = summary_stream(o.out_path);
        s << "nodes " << in.g.node_count() << "  edges " << in.g.edge_count() << "  n1 " << n1
          << "  n0 " << in.g.node_count() - n1 << "\n";
        if (in.meta)
            s << "observed: r " << fmt(observed_r) << "  counts (" << observed["m11"] << ", "
              << observed["m10"] << ", " << observed["m00"] << ")\n";
        if (mgs_range)
            s << "mgs: r in [" << fmt(mgs_range->r_lower) << ", " << fmt(mgs_range->r_upper)
              << "]\n";
        if (gs_range)
            s << "gs:  r in [" << fmt(gs_range->r_lower) << ", " << fmt(gs_range->r_upper)
              << "]\n";
    }
    return 0;
}

ordered_json exploration_json(const std::string& command, const assort::graph& g,
                              const assort::exploration_report& rep, ordered_json config) {
    ordered_json j = assort::report_header(command);
    j["input"] = assort::input_digest(g, rep.n1, false);
    j["config"] = std::move(config);
    j["seed"] = rep.seed ? ordered_json(*rep.seed) : ordered_json(nullptr);
    j["method"] = assort::to_string(rep.method);
    j["space"] = rep.space;
    j["results"] = assort::exploration_results_json(rep);
    return j;
}

void print_exploration_summary(const std::string& out_path,
                               const assort::exploration_report& rep) {
    auto& s = summary_stream(out_path);
    s << "samples " << rep.sample_count << " (undefined " << rep.undefined_count << ")  r_min "
      << fmt(rep.r_min) << "  r_max " << fmt(rep.r_max) << "  mean " << fmt(rep.mean_r);
    if (rep.best_r) s << "  best " << fmt(rep.best_r);
    s << "\n";
}

int run_enumerate(const common_options& o, std::uint64_t cap) {
    const auto in = load(o);
    const std::size_t n1 = resolve_n1(in.g, in.meta, o.n1);
    const auto rep = assort::enumerate_metadata_space(in.g, n1, cap, o.bins);
    auto j = exploration_json("enumerate", in.g, rep,
                              ordered_json{{"cap", cap}, {"bins", o.bins}});
    emit_report(j, o.out_path);
    emit_csv(o.csv_path, rep.hist);
    if (o.summary) print_exploration_summary(o.out_path, rep);
    return 0;
}

int run_heuristic(const common_options& o, const std::string& objective, std::uint64_t iters,
                  std::uint32_t restarts, double p_accept, bool init_observed) {
    const auto in = load(o);
    const std::size_t n1 = resolve_n1(in.g, in.meta, o.n1);
    if (init_observed && !in.meta)
        throw assort::parse_error("--init-observed needs --meta");

    assort::heuristic_config cfg;
    cfg.objective = objective == "min" ? assort::objective_kind::minimize
                                       : assort::objective_kind::maximize;
    cfg.iterations = iters;
    cfg.restarts = restarts;
    cfg.p_accept = p_accept;
    cfg.seed = resolve_seed(o.seed);

    const auto rep = assort::swap_heuristic(
        in.g, n1, cfg, resolve_threads(o.threads),
        init_observed ? in.meta : std::optional<assort::metadata_assignment>{}, o.bins);
    auto j = exploration_json("heuristic", in.g, rep,
                              ordered_json{{"objective", objective},
                                           {"iterations", iters},
                                           {"restarts", restarts},
                                           {"p_accept", p_accept},
                                           {"init_observed", init_observed},
                                           {"bins", o.bins}});
    emit_report(j, o.out_path);
    emit_csv(o.csv_path, rep.hist);
    if (o.summary) print_exploration_summary(o.out_path, rep);
    return 0;
}

int run_permtest(const common_options& o, std::uint64_t samples, const std::string& side) {
    const auto in = load(o);
    if (!in.meta) throw assort::parse_error("permtest needs --meta");
    resolve_n1(in.g, in.meta, std::nullopt);
    const auto tail = side == "lower" ? assort::tail_side::lower : assort::tail_side::upper;
    const std::uint64_t seed = resolve_seed(o.seed);

    const auto res = assort::permutation_pvalue(in.g, *in.meta, samples, seed, tail,
                                                resolve_threads(o.threads), o.bins);
    auto j = exploration_json("permtest", in.g, res.report,
                              ordered_json{{"samples", samples},
                                           {"side", side},
                                           {"bins", o.bins}});
    j["results"]["observed_r"] = res.observed_r;
    j["results"]["extreme_count"] = res.extreme_count;
    j["results"]["p_value"] = res.p;
    emit_report(j, o.out_path);
    emit_csv(o.csv_path, res.report.hist);
    if (o.summary) {
        print_exploration_summary(o.out_path, res.report);
        summary_stream(o.out_path) << "observed r " << fmt(res.observed_r) << "  p (" << side
                                   << ") " << res.p << "\n";
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"assortativity range analysis for binary node metadata"};
    app.require_subcommand(1);

    common_options bo, eo, ho, po;
    std::string space = "auto", variant = "improved";
    std::uint64_t cap = assort::default_enumeration_cap;
    std::string objective;
    std::uint64_t iters = 10000;
    std::uint32_t restarts = 10;
    double p_accept = 0.001;
    bool init_observed = false;
    std::uint64_t samples = 100000;
    std::string side = "upper";

    auto* bounds = app.add_subcommand("bounds", "combinatorial assortativity bounds");
    add_input_options(bounds, bo);
    bounds->add_option("--space", space, "mgs, gs, or all (default: all with --meta, else mgs)")
        ->check(CLI::IsMember({"auto", "mgs", "gs", "all"}));
    bounds->add_option("--variant", variant, "improved or original lower bounds")
        ->check(CLI::IsMember({"improved", "original"}));

    auto* enumerate = app.add_subcommand("enumerate", "exhaustive metadata-space extrema");
    add_input_options(enumerate, eo);
    enumerate->add_option("--cap", cap, "refuse to enumerate more than this many assignments");
    enumerate->add_option("--bins", eo.bins, "histogram bin count over [-1, 1]");
    enumerate->add_option("--csv", eo.csv_path, "write the histogram as CSV here");

    auto* heuristic = app.add_subcommand("heuristic", "stochastic metadata-space extremization");
    add_input_options(heuristic, ho);
    heuristic->add_option("--objective", objective, "min or max")
        ->required()
        ->check(CLI::IsMember({"min", "max"}));
    heuristic->add_option("--iters", iters, "iterations per restart");
    heuristic->add_option("--restarts", restarts, "independent restarts");
    heuristic->add_option("--p-accept", p_accept, "acceptance probability for non-improving swaps");
    heuristic->add_flag("--init-observed", init_observed, "start every restart from --meta labels");
    heuristic->add_option("--seed", ho.seed, "RNG seed (generated and printed when absent)");
    heuristic->add_option("--threads", ho.threads, "worker cap (env ASSORT_THREADS, then hardware)");
    heuristic->add_option("--bins", ho.bins, "histogram bin count over [-1, 1]");
    heuristic->add_option("--csv", ho.csv_path, "write the histogram as CSV here");

    auto* permtest = app.add_subcommand("permtest", "permutation significance test");
    add_input_options(permtest, po, false);
    permtest->add_option("--samples", samples, "number of random label permutations");
    permtest->add_option("--side", side, "upper or lower tail")
        ->check(CLI::IsMember({"upper", "lower"}));
    permtest->add_option("--seed", po.seed, "RNG seed (generated and printed when absent)");
    permtest->add_option("--threads", po.threads, "worker cap (env ASSORT_THREADS, then hardware)");
    permtest->add_option("--bins", po.bins, "histogram bin count over [-1, 1]");
    permtest->add_option("--csv", po.csv_path, "write the histogram as CSV here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (bounds->parsed()) {
            if (space == "auto") space = bo.meta_path.empty() ? "mgs" : "all";
            return run_bounds(bo, space, variant);
        }
        if (enumerate->parsed()) return run_enumerate(eo, cap);
        if (heuristic->parsed())
            return run_heuristic(ho, objective, iters, restarts, p_accept, init_observed);
        if (permtest->parsed()) return run_permtest(po, samples, side);
    } catch (const assort::degenerate_partition_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const assort::undefined_result_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const assort::error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
