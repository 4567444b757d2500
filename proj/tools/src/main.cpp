#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include <gapclique/harness.hpp>
#include <gapclique/product.hpp>
#include <gapclique/sidon.hpp>

using namespace gapclique;
using nlohmann::json;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw validation_error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// First directive line decides the format; '#' lines and blanks are skipped
// in both formats.
std::string sniff_format(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (line.rfind("p hprod", 0) == 0) return "hprod";
        if (line.rfind("p mccq", 0) == 0) return "mccq";
        break;
    }
    throw validation_error("unrecognized input format, expected a 'p mccq' or 'p hprod' header");
}

struct SidonArgs {
    std::size_t n = 0;
    std::uint32_t q = 0;
    std::uint32_t t = 0;
    std::size_t d = 0;
    bool adaptive = false;
    std::uint64_t seed = 0;
    bool has_d = false;
    bool has_seed = false;
};

int run_sidon(const SidonArgs& args) {
    FieldSpec spec(args.q);
    CandidateOrder order = args.has_seed ? CandidateOrder::seeded : CandidateOrder::lexicographic;

    json out;
    out["n"] = args.n;
    out["q"] = args.q;
    out["t"] = args.t;
    out["order"] = args.has_seed ? "seeded" : "lexicographic";
    if (args.has_seed) out["seed"] = args.seed;

    IndependentSet set;
    SidonBuildStats stats;
    if (args.adaptive) {
        AdaptiveResult result = adaptive_construct(args.n, spec, args.t, order, args.seed);
        set = std::move(result.set);
        stats = result.stats;
        out["mode"] = "adaptive";
    } else {
        std::size_t d = args.has_d ? args.d : guaranteed_dimension(args.n, spec, args.t);
        GreedyResult result = greedy_construct(args.n, spec, args.t, d, order, args.seed);
        stats = result.stats;
        if (!result.success) {
            std::cerr << "error: the greedy scan of F_" << args.q << "^" << d << " kept only "
                      << result.set.vectors.size() << " of " << args.n
                      << " vectors; retry with a larger --d or with --adaptive\n";
            return 1;
        }
        set = std::move(result.set);
        out["mode"] = args.has_d ? "explicit-d" : "guaranteed-d";
    }
    out["d"] = set.dim;

    json vectors = json::array();
    for (const FVector& v : set.vectors) vectors.push_back(v.to_digits());
    out["vectors"] = std::move(vectors);

    // The certificate re-verifies the construction from scratch rather than
    // repeating its promise.
    IndependenceCheck check = verify_t_independent(set.vectors, args.t);
    json certificate;
    certificate["arity"] = args.t;
    certificate["t_independent"] = check.independent;
    if (!check.independent) {
        json witness = json::array();
        for (std::size_t i : check.witness) witness.push_back(set.vectors[i].to_digits());
        certificate["dependent_subset"] = std::move(witness);
    }
    // the pair-collision scan is quartic in n, so cap it at desk scale
    if (args.t >= 4 && set.vectors.size() <= 64) {
        auto violation = linear_sidon_violation(set.vectors);
        certificate["linear_sidon"] = !violation.has_value();
    } else {
        certificate["linear_sidon"] = nullptr;
    }
    out["certificate"] = std::move(certificate);
    out["stats"] = {{"candidates_scanned", stats.candidates_scanned},
                    {"span_tests", stats.span_tests}};

    std::cout << out.dump(2) << "\n";
    return check.independent ? 0 : 1;
}

struct ReduceArgs {
    std::string input;
    std::uint32_t q = 0;
    std::string variant;
    std::string mode = "adaptive";
    bool materialize_h = false;
    std::string out_path;
    std::uint64_t budget = kDefaultNodeBudget;
    bool has_out = false;
};

int run_reduce(const ReduceArgs& args) {
    ColoredGraph g = ColoredGraph::parse_string(slurp(args.input));
    Variant variant = variant_from_string(args.variant);
    LabelMode mode = label_mode_from_string(args.mode);
    FieldSpec spec(args.q);

    LabeledGraph labeled = attach_labels(g, spec, required_arity(variant), mode);

    json summary;
    summary["input"] = args.input;
    summary["n"] = g.n();
    summary["m"] = g.edge_count();
    summary["q"] = args.q;
    summary["k"] = g.k();
    summary["d"] = labeled.dim();
    summary["variant"] = args.variant;
    summary["mode"] = args.mode;
    summary["arity"] = required_arity(variant);
    json labels = json::array();
    for (std::uint32_t v = 1; v <= g.n(); ++v) labels.push_back(labeled.label(v).to_digits());
    summary["labels"] = std::move(labels);

    ProductGraph product(std::move(labeled), variant);
    if (auto count = product.node_count()) {
        summary["nodes"] = *count;
    } else {
        summary["nodes"] = nullptr;  // q^(k+d) exceeds 64 bits
    }

    if (!args.materialize_h) {
        summary["materialized"] = false;
        std::cout << summary.dump(2) << "\n";
        return 0;
    }

    MaterializedProduct mat = materialize(product, args.budget);
    summary["materialized"] = true;
    summary["edges"] = mat.graph.edge_count();
    if (args.has_out) {
        std::ofstream out(args.out_path);
        if (!out) throw validation_error("cannot write " + args.out_path);
        write_hprod(out, mat);
        summary["out"] = args.out_path;
        std::cout << summary.dump(2) << "\n";
    } else {
        // the graph itself goes to stdout, so the summary is suppressed
        write_hprod(std::cout, mat);
    }
    return 0;
}

struct SolveArgs {
    std::string input;
    std::size_t bound = 0;
    bool has_bound = false;
};

int run_solve(const SolveArgs& args) {
    std::string text = slurp(args.input);
    std::string format = sniff_format(text);

    DenseGraph graph(0);
    std::vector<HNode> nodes;  // populated for hprod input only
    if (format == "hprod") {
        MaterializedProduct mat = parse_hprod_string(text);
        graph = std::move(mat.graph);
        nodes = std::move(mat.nodes);
    } else {
        ColoredGraph g = ColoredGraph::parse_string(text);
        DenseGraph dense(g.n());
        for (auto [u, v] : g.edges()) dense.add_edge(u - 1, v - 1);
        graph = std::move(dense);
    }

    json out;
    out["input"] = args.input;
    out["format"] = format;
    out["n"] = graph.n();

    auto start = std::chrono::steady_clock::now();
    std::vector<std::uint32_t> witness;
    std::uint64_t expanded = 0;
    if (args.has_bound) {
        BoundCheck check = clique_exceeds(graph, args.bound);
        out["bound"] = args.bound;
        out["decision"] = check.exceeds;
        witness = std::move(check.witness);
        expanded = check.nodes_expanded;
    } else {
        CliqueResult result = max_clique(graph);
        out["omega"] = result.size;
        witness = std::move(result.witness);
        expanded = result.nodes_expanded;
    }
    std::chrono::duration<double, std::milli> elapsed = std::chrono::steady_clock::now() - start;

    json ids = json::array();
    for (std::uint32_t v : witness) ids.push_back(v + 1);  // file ids are 1-based
    out["witness"] = std::move(ids);
    if (format == "hprod") {
        json decoded = json::array();
        for (std::uint32_t v : witness) {
            decoded.push_back({{"r", nodes[v].r.to_digits()}, {"pi", nodes[v].pi.to_digits()}});
        }
        out["witness_nodes"] = std::move(decoded);
    }
    out["nodes_expanded"] = expanded;
    out["runtime_ms"] = elapsed.count();

    std::cout << out.dump(2) << "\n";
    return 0;
}

struct VerifyArgs {
    std::string suite;
    std::string out_path;
};

int run_verify(const VerifyArgs& args) {
    SuiteConfig config = SuiteConfig::from_json(slurp(args.suite));
    SuiteReport report = run_suite(config);

    std::ofstream out(args.out_path);
    if (!out) throw validation_error("cannot write " + args.out_path);
    out << report.to_json();
    out.close();

    std::size_t total = report.outcomes.size();
    std::cout << "wrote " << args.out_path << "\n";
    std::cout << total << " instances: R1 " << report.r1_passed << "/" << total - report.errored
              << ", R2 " << report.r2_passed << "/" << total - report.errored << ", errors "
              << report.errored << "\n";
    for (const InstanceOutcome& outcome : report.outcomes) {
        if (!outcome.error.empty()) {
            std::cout << "  " << outcome.name << ": " << outcome.error << "\n";
        }
    }
    if (!report.pairs.empty()) {
        std::size_t met = 0;
        for (const GapPair& pair : report.pairs) met += pair.meets_gap ? 1 : 0;
        std::cout << report.pairs.size() << " matched pairs: " << met << " meet the factor-"
                  << report.q << " gap\n";
    }
    std::cout << (report.all_pass ? "PASS" : "FAIL") << "\n";
    return report.all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "gap-producing self-reduction for multi-colored k-Clique: label sets, product "
        "graphs, exact solving, and end-to-end verification"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "0.1.0");

    SidonArgs sidon_args;
    CLI::App* sidon = app.add_subcommand(
        "sidon", "construct a t-term independent label set over F_q and certify it");
    sidon->add_option("--n", sidon_args.n, "number of vectors to construct")
        ->required()
        ->check(CLI::PositiveNumber);
    sidon->add_option("--q", sidon_args.q, "field order (prime)")->required();
    sidon->add_option("--t", sidon_args.t, "independence arity")
        ->required()
        ->check(CLI::Range(2u, 16u));
    CLI::Option* opt_d =
        sidon->add_option("--d", sidon_args.d, "explicit dimension for the greedy scan")
            ->check(CLI::PositiveNumber);
    CLI::Option* opt_adaptive = sidon->add_flag(
        "--adaptive", sidon_args.adaptive, "search upward from the smallest plausible dimension");
    opt_d->excludes(opt_adaptive);
    CLI::Option* opt_seed = sidon->add_option(
        "--seed", sidon_args.seed, "scan F_q^d in seeded random order instead of counting order");

    ReduceArgs reduce_args;
    CLI::App* reduce = app.add_subcommand(
        "reduce", "build the product graph H of a multi-colored instance");
    reduce->add_option("--input", reduce_args.input, "mccq instance file")->required();
    reduce->add_option("--q", reduce_args.q, "field order (prime)")->required();
    reduce->add_option("--variant", reduce_args.variant, "construction variant")
        ->required()
        ->check(CLI::IsMember({"basic", "improved"}));
    reduce->add_option("--mode", reduce_args.mode, "label dimension choice (default adaptive)")
        ->check(CLI::IsMember({"adaptive", "guaranteed"}));
    reduce->add_flag("--materialize", reduce_args.materialize_h,
                     "enumerate H explicitly and emit hprod text");
    CLI::Option* opt_out = reduce->add_option(
        "--out", reduce_args.out_path, "hprod destination (stdout when omitted)");
    reduce->add_option("--budget", reduce_args.budget,
                       "largest node universe to materialize (default 2^16)");

    SolveArgs solve_args;
    CLI::App* solve = app.add_subcommand(
        "solve", "exact maximum clique of an hprod or mccq file");
    solve->add_option("--input", solve_args.input, "hprod or mccq file")->required();
    CLI::Option* opt_bound = solve->add_option(
        "--bound", solve_args.bound,
        "decide whether a clique strictly larger than this exists instead of solving exactly");

    VerifyArgs verify_args;
    CLI::App* verify = app.add_subcommand(
        "verify", "run a suite of gap experiments and write a JSON report");
    verify->add_option("--suite", verify_args.suite, "suite config JSON file")->required();
    verify->add_option("--out", verify_args.out_path, "report destination")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    sidon_args.has_d = opt_d->count() > 0;
    sidon_args.has_seed = opt_seed->count() > 0;
    reduce_args.has_out = opt_out->count() > 0;
    solve_args.has_bound = opt_bound->count() > 0;

    try {
        if (sidon->parsed()) return run_sidon(sidon_args);
        if (reduce->parsed()) return run_reduce(reduce_args);
        if (solve->parsed()) return run_solve(solve_args);
        if (verify->parsed()) return run_verify(verify_args);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
