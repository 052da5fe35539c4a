#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "ctxgap/alpha.hpp"
#include "ctxgap/graph.hpp"
#include "ctxgap/theta.hpp"

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

double odd_cycle_theta(int n) {
    const double c = std::cos(M_PI / n);
    return n * c / (1.0 + c);
}

}  // namespace

TEST_CASE("theta reference values") {
    CHECK(lovasz_theta(cycle_graph(5)).theta == Catch::Approx(std::sqrt(5.0)).margin(1e-8));
    CHECK(lovasz_theta(cycle_graph(7)).theta == Catch::Approx(odd_cycle_theta(7)).margin(1e-8));
    CHECK(lovasz_theta(complete_graph(8)).theta == Catch::Approx(1.0).margin(1e-9));
    CHECK(lovasz_theta(Graph(8)).theta == Catch::Approx(8.0).margin(1e-9));
    CHECK(lovasz_theta(Graph(1)).theta == Catch::Approx(1.0).margin(1e-9));
    CHECK(lovasz_theta(quad_c5_graph()).theta == Catch::Approx(3.46784).margin(1e-5));
    CHECK(lovasz_theta(wagner_graph()).theta == Catch::Approx(2.0 + std::sqrt(2.0)).margin(1e-5));
}

TEST_CASE("certificate residuals are small and self-consistent") {
    for (const Graph& g : {quad_c5_graph(), wagner_graph(), cycle_graph(5)}) {
        const ThetaCertificate c = lovasz_theta(g, SolveSettings::high_accuracy());
        CHECK(std::abs(c.r_p) <= 1e-8);
        CHECK(std::abs(c.r_edge) <= 1e-8);
        CHECK(std::abs(c.lambda_min_X) <= 1e-8);
        CHECK(std::abs(c.r_d) <= 1e-8);
        CHECK(std::abs(c.lambda_min_S) <= 1e-8);

        // verify_certificate recomputes the residuals from X, y, z alone
        const CertificateReport report = verify_certificate(c, g);
        CHECK(report.pass);
        CHECK(report.theta_recomputed == Catch::Approx(c.theta).margin(1e-12));
        for (const auto& check : report.checks) {
            double stored = 0.0;
            if (check.name == "r_p") stored = c.r_p;
            if (check.name == "r_edge") stored = c.r_edge;
            if (check.name == "lambda_min_X") stored = c.lambda_min_X;
            if (check.name == "r_d") stored = c.r_d;
            if (check.name == "lambda_min_S") stored = c.lambda_min_S;
            CHECK(check.value == Catch::Approx(stored).margin(1e-12));
        }
    }
}

TEST_CASE("verify_certificate flags corruption") {
    const Graph g = quad_c5_graph();
    ThetaCertificate c = lovasz_theta(g);

    SECTION("edge entry perturbed") {
        c.X(0, 3) += 1e-3;
        c.X(3, 0) += 1e-3;
        const CertificateReport report = verify_certificate(c, g);
        CHECK(!report.pass);
        for (const auto& check : report.checks)
            if (check.name == "r_edge") CHECK(!check.pass);
    }

    SECTION("feasible but suboptimal certificate fails only on r_d") {
        const Graph empty = Graph(8);
        ThetaCertificate sub;
        sub.X = Eigen::MatrixXd::Identity(8, 8) / 8.0;
        sub.y = 8.0;
        const CertificateReport report = verify_certificate(sub, empty);
        CHECK(!report.pass);
        for (const auto& check : report.checks) {
            if (check.name == "r_d")
                CHECK(!check.pass);  // theta(X) = 1 while y = 8
            else
                CHECK(check.pass);
        }
    }

    SECTION("dimension mismatch") {
        CHECK_THROWS_AS(verify_certificate(c, cycle_graph(5)), std::invalid_argument);
    }
}

TEST_CASE("sandwich and monotonicity properties") {
    std::mt19937_64 rng(53);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 6);
        Graph g = random_graph(n, 0.4, rng);
        const double theta = lovasz_theta(g).theta;
        CHECK(alpha_clique(g).alpha <= theta + 1e-7);

        // adding an edge never increases theta
        std::vector<std::pair<int, int>> non_edges;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (!g.has_edge(i, j)) non_edges.emplace_back(i, j);
        if (!non_edges.empty()) {
            const auto [i, j] = non_edges[static_cast<std::size_t>(rng() % non_edges.size())];
            g.add_edge(i, j);
            CHECK(lovasz_theta(g).theta <= theta + 1e-7);
        }
    }
}

TEST_CASE("theta is additive over disjoint unions") {
    std::mt19937_64 rng(59);
    for (int trial = 0; trial < 15; ++trial) {
        const int na = 1 + static_cast<int>(rng() % 5);
        const int nb = 1 + static_cast<int>(rng() % 5);
        const Graph a = random_graph(na, 0.5, rng);
        const Graph b = random_graph(nb, 0.5, rng);
        const double lhs = lovasz_theta(disjoint_union(a, b)).theta;
        const double rhs = lovasz_theta(a).theta + lovasz_theta(b).theta;
        CHECK(lhs == Catch::Approx(rhs).margin(1e-7));
    }
}

TEST_CASE("repeated solve interval") {
    const ThetaInterval qc = repeated_solve_interval(quad_c5_graph(), 10,
                                                     SolveSettings::high_accuracy(), 7);
    // interval contains 3.46784 and sits within 1e-7 of the published value
    CHECK(qc.lower <= 3.467845);
    CHECK(qc.upper >= 3.467835);
    CHECK(std::abs(qc.lower - 3.46784373) <= 1e-7);
    CHECK(qc.half_width <= 1e-6);

    const ThetaInterval empty = repeated_solve_interval(Graph(5), 3);
    CHECK(empty.lower == Catch::Approx(5.0).margin(1e-8));
    CHECK(empty.half_width <= 1e-9);

    CHECK_THROWS_AS(repeated_solve_interval(Graph(3), 1), std::invalid_argument);
}

TEST_CASE("solver reports non-convergence explicitly") {
    SolveSettings strangled;
    strangled.tolerance = 1e-10;
    strangled.max_iterations = 2;
    try {
        (void)lovasz_theta(quad_c5_graph(), strangled);
        FAIL("expected ThetaNonConvergence");
    } catch (const ThetaNonConvergence& e) {
        CHECK(e.best_iterate.X.rows() == 8);
        CHECK(e.best_iterate.r_d > 1e-10);
    }

    SolveSettings bad;
    bad.tolerance = 0.0;
    CHECK_THROWS_AS(lovasz_theta(Graph(2), bad), std::invalid_argument);
}

TEST_CASE("deterministic for fixed settings") {
    const double a = lovasz_theta(quad_c5_graph()).theta;
    const double b = lovasz_theta(quad_c5_graph()).theta;
    CHECK(a == b);
}
