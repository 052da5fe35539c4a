#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "ctxgap/alpha.hpp"
#include "ctxgap/graph.hpp"

using namespace ctxgap;

namespace {

Graph random_graph(int n, double p, std::mt19937_64& rng) {
    Graph g(n);
    std::bernoulli_distribution coin(p);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (coin(rng)) g.add_edge(i, j);
    return g;
}

bool is_independent(const Graph& g, VertexSet s) {
    for (VertexSet rest = s; rest;) {
        const int v = lowest_vertex(rest);
        rest &= rest - 1;
        if (g.neighbors(v) & s) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("alpha reference values") {
    CHECK(alpha_bruteforce(cycle_graph(5)).alpha == 2);
    CHECK(alpha_bruteforce(quad_c5_graph()).alpha == 3);
    CHECK(alpha_bruteforce(complete_graph(8)).alpha == 1);
    CHECK(alpha_bruteforce(Graph(8)).alpha == 8);

    CHECK(alpha_clique(cycle_graph(7)).alpha == 3);
    CHECK(alpha_clique(wagner_graph()).alpha == 3);
    CHECK(alpha_clique(quad_c5_graph()).alpha == 3);
    CHECK(alpha_clique(Graph(8)).alpha == 8);
}

TEST_CASE("alpha methods agree and witnesses are valid") {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 300; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 10);
        const double p = 0.15 + 0.07 * static_cast<double>(rng() % 10);
        const Graph g = random_graph(n, p, rng);

        const AlphaResult bf = alpha_bruteforce(g);
        const AlphaResult cl = alpha_clique(g);
        REQUIRE(bf.alpha == cl.alpha);

        CHECK(popcount(bf.witness) == bf.alpha);
        CHECK(is_independent(g, bf.witness));
        CHECK(popcount(cl.witness) == cl.alpha);
        CHECK(is_independent(g, cl.witness));
        CHECK(bf.alpha >= 1);
        CHECK((bf.alpha == n) == (g.edge_count() == 0));
    }
}

TEST_CASE("removing an edge never decreases alpha") {
    std::mt19937_64 rng(43);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 7);
        Graph g = random_graph(n, 0.5, rng);
        const auto edges = g.edges();
        if (edges.empty()) continue;
        const auto [i, j] = edges[static_cast<std::size_t>(rng() % edges.size())];
        const int before = alpha_clique(g).alpha;
        g.remove_edge(i, j);
        CHECK(alpha_clique(g).alpha >= before);
    }
}

TEST_CASE("witness tie-breaks are deterministic") {
    // Brute force keeps the first maximizer in subset order.
    const Graph g = cycle_graph(5);
    CHECK(alpha_bruteforce(g).witness == ((VertexSet{1} << 0) | (VertexSet{1} << 2)));
    // Clique route picks the lexicographically smallest vertex set.
    CHECK(alpha_clique(g).witness == ((VertexSet{1} << 0) | (VertexSet{1} << 2)));
    CHECK(alpha_clique(complete_graph(6)).witness == VertexSet{1});
}

TEST_CASE("alpha_bruteforce rejects large graphs") {
    CHECK_THROWS_AS(alpha_bruteforce(Graph(25)), std::invalid_argument);
    CHECK_NOTHROW(alpha_clique(Graph(32)));
    CHECK(alpha_clique(Graph(32)).alpha == 32);
}
