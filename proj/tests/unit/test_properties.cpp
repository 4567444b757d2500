#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <string>
#include <vector>

#include "gapclique/clique_solver.hpp"
#include "gapclique/harness.hpp"
#include "gapclique/product.hpp"

using namespace gapclique;

namespace {

std::uint64_t pow_u64(std::uint64_t base, std::size_t e) {
    std::uint64_t out = 1;
    for (std::size_t i = 0; i < e; ++i) out *= base;
    return out;
}

std::vector<HNode> nodes_of(const MaterializedProduct& mat,
                            const std::vector<std::uint32_t>& witness) {
    std::vector<HNode> nodes;
    for (std::uint32_t id : witness) nodes.push_back(mat.nodes[id]);
    return nodes;
}

}  // namespace

// The soundness proof's per-column accounting, checked on the *extremal*
// cliques the exact solver finds rather than on hand-built examples: every
// occupied column keeps a free direction, the escape sets avoid the clique,
// and no escape column is claimed more often than the variant allows.
TEST_CASE("escape accounting holds on solver-found maximum cliques") {
    constexpr std::uint32_t q = 2;
    for (std::size_t n = 4; n <= 6; ++n) {
        for (std::size_t k : {2, 3}) {
            for (std::uint64_t seed : {1ull, 2ull}) {
                ColoredGraph g = generate_instance(InstanceKind::no_instance, n, k, seed, 0.5);
                for (Variant variant : {Variant::basic, Variant::improved}) {
                    CAPTURE(n);
                    CAPTURE(k);
                    CAPTURE(seed);
                    CAPTURE(variant == Variant::basic);

                    LabeledGraph labeled =
                        attach_labels(g, FieldSpec(q), required_arity(variant));
                    ProductGraph product(std::move(labeled), variant);
                    MaterializedProduct mat = materialize(product, 1 << 12);
                    CliqueResult best = max_clique(mat.graph);
                    REQUIRE(best.size >= 1);

                    TrOverlap overlap = t_r_overlap(product, nodes_of(mat, best.witness));
                    std::size_t multiplicity_cap = variant == Variant::basic ? k : 1;
                    CHECK(overlap.centers == 0);
                    CHECK(overlap.escapes_avoid_clique);
                    CHECK(overlap.max_multiplicity <= multiplicity_cap);
                    CHECK(overlap.bound == multiplicity_cap);
                    CHECK(overlap.within_bound);

                    // one node per column, and the counting argument's
                    // conclusion on the clique the solver actually found
                    CHECK(overlap.occupied == best.size);
                    CHECK(best.size <= multiplicity_cap * pow_u64(q, k - 1));
                }
            }
        }
    }
}

TEST_CASE("improved edges are a subset of basic edges on shared labels") {
    for (std::uint64_t seed : {3ull, 4ull, 5ull}) {
        ColoredGraph g = generate_instance(InstanceKind::random_instance, 5, 2, seed, 0.4);
        // one arity-8 labeling serves both variants, making graphs comparable
        LabeledGraph labeled = attach_labels(g, FieldSpec(2), 8);
        ProductGraph basic(labeled, Variant::basic);
        ProductGraph improved(labeled, Variant::improved);
        MaterializedProduct mb = materialize(basic, 1 << 12);
        MaterializedProduct mi = materialize(improved, 1 << 12);
        REQUIRE(mb.nodes.size() == mi.nodes.size());

        for (std::size_t i = 0; i < mi.nodes.size(); ++i) {
            for (std::size_t j = i + 1; j < mi.nodes.size(); ++j) {
                if (mi.graph.adjacent(i, j)) CHECK(mb.graph.adjacent(i, j));
            }
        }
        CHECK(mi.graph.edge_count() <= mb.graph.edge_count());
    }
}

TEST_CASE("hprod text round-trips materialized graphs exactly") {
    struct Case {
        std::size_t n, k;
        std::uint32_t q;
        Variant variant;
    };
    for (const Case& c : {Case{4, 2, 2, Variant::improved}, Case{3, 3, 2, Variant::basic},
                          Case{4, 2, 3, Variant::basic}}) {
        ColoredGraph g = generate_instance(InstanceKind::planted_yes, c.n, c.k, 9, 0.3);
        LabeledGraph labeled = attach_labels(g, FieldSpec(c.q), required_arity(c.variant));
        ProductGraph product(std::move(labeled), c.variant);
        MaterializedProduct mat = materialize(product, 1 << 12);

        std::string text = serialize_hprod(mat);
        MaterializedProduct back = parse_hprod_string(text);
        CHECK(serialize_hprod(back) == text);
        REQUIRE(back.nodes.size() == mat.nodes.size());
        for (std::size_t i = 0; i < mat.nodes.size(); ++i) {
            CHECK(back.nodes[i] == mat.nodes[i]);
        }
        CHECK(back.graph.edge_count() == mat.graph.edge_count());
        CHECK(max_clique(back.graph).size == max_clique(mat.graph).size);
    }
}

TEST_CASE("hprod text round-trips wide fields with dot-separated digits") {
    // q > 10 switches the vector serialization; a synthetic product graph
    // keeps the universe small without needing a labeling over F_11
    FieldSpec f(11);
    const std::size_t k = 2, d = 1;
    const std::size_t n = 11 * 11 * 11;

    MaterializedProduct m{f, k, d, {}, DenseGraph(n)};
    m.nodes.reserve(n);
    for (std::size_t r = 0; r < 11 * 11; ++r) {
        for (std::size_t pi = 0; pi < 11; ++pi) {
            m.nodes.push_back(
                {FVector::from_index(r, k, f), FVector::from_index(pi, d, f)});
        }
    }
    m.graph.add_edge(0, 12);
    m.graph.add_edge(0, n - 1);
    m.graph.add_edge(5, 17);
    m.graph.add_edge(n - 3, n - 1);

    std::string text = serialize_hprod(m);
    CHECK(text.rfind("p hprod 1331 4 11 2 1", 0) == 0);
    CHECK(text.find("v 1331 10.10 10\n") != std::string::npos);

    MaterializedProduct back = parse_hprod_string(text);
    CHECK(serialize_hprod(back) == text);
    REQUIRE(back.nodes.size() == n);
    CHECK(back.nodes[n - 1].r.to_digits() == "10.10");
    CHECK(back.graph.edge_count() == 4);
    CHECK(back.graph.adjacent(0, n - 1));
    CHECK(back.graph.adjacent(n - 3, n - 1));
}

namespace {

// Random single-step corruptions: the parser must reject or accept with a
// proper exception, never crash. Sanitizer builds make this bite.
template <typename ParseFn>
void fuzz_parser(const std::string& valid, ParseFn parse, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::size_t parsed = 0, rejected = 0;
    for (int iter = 0; iter < 400; ++iter) {
        std::string text = valid;
        switch (rng() % 5) {
            case 0:  // flip one character
                text[rng() % text.size()] =
                    static_cast<char>("0123456789 pvcex\n#"[rng() % 18]);
                break;
            case 1:  // truncate
                text.resize(rng() % text.size());
                break;
            case 2: {  // delete one line
                std::vector<std::string> lines;
                std::size_t start = 0;
                while (start < text.size()) {
                    std::size_t end = text.find('\n', start);
                    if (end == std::string::npos) end = text.size();
                    lines.push_back(text.substr(start, end - start));
                    start = end + 1;
                }
                lines.erase(lines.begin() + rng() % lines.size());
                text.clear();
                for (const std::string& l : lines) text += l + "\n";
                break;
            }
            case 3:  // duplicate a suffix
                text += text.substr(text.size() / 2);
                break;
            case 4:  // inject a junk line after the header
                text.insert(text.find('\n') + 1, "x 1 2 3\n");
                break;
        }
        try {
            parse(text);
            ++parsed;
        } catch (const std::exception&) {
            ++rejected;
        }
    }
    CHECK(parsed + rejected == 400);
    CHECK(rejected > 0);  // corruption is usually fatal; silence would be a bug
}

}  // namespace

TEST_CASE("mccq parser survives random corruption") {
    ColoredGraph g = generate_instance(InstanceKind::planted_yes, 6, 3, 11, 0.4);
    fuzz_parser(g.serialize(), [](const std::string& t) { ColoredGraph::parse_string(t); },
                101);
}

TEST_CASE("hprod parser survives random corruption") {
    ColoredGraph g = generate_instance(InstanceKind::planted_yes, 4, 2, 11, 0.4);
    LabeledGraph labeled = attach_labels(g, FieldSpec(2), 4);
    ProductGraph product(std::move(labeled), Variant::basic);
    std::string valid = serialize_hprod(materialize(product, 1 << 12));
    fuzz_parser(valid, [](const std::string& t) { parse_hprod_string(t); }, 202);
}

TEST_CASE("suite results are independent of scheduling") {
    SuiteConfig cfg = SuiteConfig::from_json(R"({
        "q": 2,
        "variant": "improved",
        "instances": [
            {"name": "a", "kind": "planted-yes", "n": 5, "k": 2, "seed": 1},
            {"name": "b", "kind": "no-instance", "n": 5, "k": 2, "seed": 1},
            {"name": "c", "kind": "random", "n": 6, "k": 3, "seed": 2},
            {"name": "d", "kind": "planted-yes", "n": 6, "k": 3, "seed": 3}
        ]
    })");
    SuiteReport first = run_suite(cfg);
    SuiteReport second = run_suite(cfg);
    REQUIRE(first.outcomes.size() == second.outcomes.size());
    for (std::size_t i = 0; i < first.outcomes.size(); ++i) {
        const InstanceOutcome& a = first.outcomes[i];
        const InstanceOutcome& b = second.outcomes[i];
        CHECK(a.name == b.name);
        REQUIRE(a.report.has_value());
        REQUIRE(b.report.has_value());
        CHECK(a.report->omega_h == b.report->omega_h);
        CHECK(a.report->d == b.report->d);
        CHECK(a.report->has_k_clique == b.report->has_k_clique);
        CHECK(a.report->r1_pass == b.report->r1_pass);
        CHECK(a.report->r2_pass == b.report->r2_pass);
    }
    CHECK(first.pairs.size() == second.pairs.size());
    CHECK(first.all_pass == second.all_pass);
}
