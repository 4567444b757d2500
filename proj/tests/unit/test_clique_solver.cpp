#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdint>
#include <random>
#include <vector>

#include "gapclique/clique_solver.hpp"

using namespace gapclique;

namespace {

// Oracle: exact clique number by plain subset recursion over bitmask
// neighborhoods. No ordering tricks, no coloring, nothing shared with the
// solver under test. Fine up to n = 18 or so.
std::size_t omega_rec(const std::vector<std::uint64_t>& adj, std::uint64_t cand) {
    if (cand == 0) return 0;
    std::uint32_t v = static_cast<std::uint32_t>(__builtin_ctzll(cand));
    std::uint64_t rest = cand & (cand - 1);
    std::size_t without = omega_rec(adj, rest);
    std::size_t with = 1 + omega_rec(adj, rest & adj[v]);
    return std::max(without, with);
}

std::size_t omega_by_enumeration(std::size_t n, const std::vector<std::uint64_t>& adj) {
    if (n == 0) return 0;
    std::uint64_t all = n == 64 ? ~0ull : ((1ull << n) - 1);
    return omega_rec(adj, all);
}

struct RandomGraph {
    DenseGraph dense;
    std::vector<std::uint64_t> masks;  // oracle-side adjacency, n <= 64
};

RandomGraph random_graph(std::size_t n, double p, std::uint64_t seed) {
    RandomGraph g{DenseGraph(n), std::vector<std::uint64_t>(n, 0)};
    std::mt19937_64 rng(seed);
    std::bernoulli_distribution coin(p);
    for (std::size_t u = 0; u < n; ++u) {
        for (std::size_t v = u + 1; v < n; ++v) {
            if (coin(rng)) {
                g.dense.add_edge(u, v);
                g.masks[u] |= 1ull << v;
                g.masks[v] |= 1ull << u;
            }
        }
    }
    return g;
}

DenseGraph from_edges(std::size_t n, const std::vector<std::pair<int, int>>& edges) {
    DenseGraph g(n);
    for (auto [u, v] : edges) g.add_edge(static_cast<std::size_t>(u), static_cast<std::size_t>(v));
    return g;
}

}  // namespace

TEST_CASE("dense graph storage and accessors") {
    DenseGraph g(70);  // spans two words per row
    g.add_edge(0, 69);
    g.add_edge(3, 64);
    CHECK(g.adjacent(0, 69));
    CHECK(g.adjacent(69, 0));
    CHECK(g.adjacent(64, 3));
    CHECK_FALSE(g.adjacent(0, 1));
    CHECK(g.degree(0) == 1);
    CHECK(g.degree(69) == 1);
    CHECK(g.degree(1) == 0);
    CHECK(g.edge_count() == 2);
    CHECK(g.words_per_row() == 2);
    CHECK_THROWS_AS(g.add_edge(0, 70), std::out_of_range);
    CHECK_THROWS_AS(g.add_edge(5, 5), std::invalid_argument);
    CHECK_THROWS_AS((void)g.adjacent(70, 0), std::out_of_range);
}

TEST_CASE("clique number on known graphs") {
    SUBCASE("empty graph, one vertex, no vertices") {
        CHECK(max_clique(DenseGraph(0)).size == 0);
        CHECK(max_clique(DenseGraph(1)).size == 1);
        CHECK(max_clique(DenseGraph(6)).size == 1);  // 6 isolated vertices
    }
    SUBCASE("complete graph") {
        DenseGraph g(6);
        for (int u = 0; u < 6; ++u)
            for (int v = u + 1; v < 6; ++v) g.add_edge(u, v);
        auto r = max_clique(g);
        CHECK(r.size == 6);
        CHECK(r.witness == std::vector<std::uint32_t>{0, 1, 2, 3, 4, 5});
        CHECK_FALSE(r.early_exit);
    }
    SUBCASE("five cycle") {
        auto g = from_edges(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}});
        CHECK(max_clique(g).size == 2);
    }
    SUBCASE("wheel on six spokes") {
        auto g = from_edges(7, {{1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 1},
                                {0, 1}, {0, 2}, {0, 3}, {0, 4}, {0, 5}, {0, 6}});
        auto r = max_clique(g);
        CHECK(r.size == 3);
        CHECK(verify_clique(g, r.witness));
    }
    SUBCASE("two disjoint triangles") {
        auto g = from_edges(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}});
        auto r = max_clique(g);
        CHECK(r.size == 3);
        CHECK(verify_clique(g, r.witness));
    }
    SUBCASE("petersen graph") {
        auto g = from_edges(10, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0},
                                 {0, 5}, {1, 6}, {2, 7}, {3, 8}, {4, 9},
                                 {5, 7}, {7, 9}, {9, 6}, {6, 8}, {8, 5}});
        CHECK(max_clique(g).size == 2);
    }
}

TEST_CASE("solver agrees with enumeration oracle on random graphs") {
    std::size_t checked = 0;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        std::size_t n = 1 + seed % 18;
        double p = (seed % 3 == 0) ? 0.2 : (seed % 3 == 1 ? 0.5 : 0.8);
        auto g = random_graph(n, p, seed * 977);
        auto r = max_clique(g.dense);
        REQUIRE(r.size == omega_by_enumeration(n, g.masks));
        REQUIRE(r.witness.size() == r.size);
        REQUIRE(verify_clique(g.dense, r.witness));
        REQUIRE_FALSE(r.early_exit);
        if (n > 1) CHECK(r.nodes_expanded > 0);
        ++checked;
    }
    CHECK(checked == 100);
}

TEST_CASE("bound decision mode matches the full search") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        std::size_t n = 24 + seed % 41;  // up to 64
        auto g = random_graph(n, 0.4 + 0.02 * (seed % 10), seed * 31337).dense;
        std::size_t omega = max_clique(g).size;
        for (std::size_t bound : {std::size_t{0}, omega - 1, omega, omega + 1}) {
            auto check = clique_exceeds(g, bound);
            REQUIRE(check.exceeds == (omega > bound));
            if (check.exceeds) {
                REQUIRE(check.witness.size() > bound);
                REQUIRE(verify_clique(g, check.witness));
            } else {
                REQUIRE(check.witness.empty());
            }
        }
    }
}

TEST_CASE("early exit reports a lower bound without proving optimality") {
    // A dense graph where a clique above the threshold turns up quickly.
    auto g = random_graph(40, 0.9, 4242).dense;
    std::size_t omega = max_clique(g).size;
    REQUIRE(omega > 4);
    auto r = max_clique(g, 4);
    CHECK(r.early_exit);
    CHECK(r.size > 4);
    CHECK(r.size <= omega);
    CHECK(verify_clique(g, r.witness));
    // A threshold at or above omega can never trip the early exit.
    CHECK_FALSE(max_clique(g, omega).early_exit);
}

TEST_CASE("witness verification rejects non cliques") {
    auto g = from_edges(4, {{0, 1}, {1, 2}, {0, 2}});
    CHECK(verify_clique(g, {0, 1, 2}));
    CHECK(verify_clique(g, {}));
    CHECK(verify_clique(g, {3}));
    CHECK_FALSE(verify_clique(g, {0, 1, 3}));    // 3 is isolated
    CHECK_FALSE(verify_clique(g, {0, 0, 1}));    // duplicate
    CHECK_FALSE(verify_clique(g, {0, 1, 4}));    // out of range
}

TEST_CASE("solver is deterministic") {
    auto g = random_graph(30, 0.5, 777).dense;
    auto a = max_clique(g);
    auto b = max_clique(g);
    CHECK(a.size == b.size);
    CHECK(a.witness == b.witness);
    CHECK(a.nodes_expanded == b.nodes_expanded);
}
