#pragma once

#include <array>
#include <cmath>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ctxgap/graph.hpp"
#include "ctxgap/jacobi.hpp"

namespace ctxgap {

/// All 5-vertex subsets inducing a 5-cycle, plus per-edge containment counts.
struct PentagonCover {
    std::vector<std::array<int, 5>> pentagons;                // sorted vertex lists
    std::map<std::pair<int, int>, int> edge_multiplicity;     // (i<j) -> pentagon count
};

inline PentagonCover induced_pentagons(const Graph& g) {
    const int n = g.vertex_count();
    PentagonCover cover;
    for (auto [i, j] : g.edges()) cover.edge_multiplicity[{i, j}] = 0;

    std::array<int, 5> pick{};
    // A 5-vertex induced subgraph is a 5-cycle iff every induced degree is 2.
    for (pick[0] = 0; pick[0] < n; ++pick[0])
        for (pick[1] = pick[0] + 1; pick[1] < n; ++pick[1])
            for (pick[2] = pick[1] + 1; pick[2] < n; ++pick[2])
                for (pick[3] = pick[2] + 1; pick[3] < n; ++pick[3])
                    for (pick[4] = pick[3] + 1; pick[4] < n; ++pick[4]) {
                        VertexSet subset = 0;
                        for (int v : pick) subset |= VertexSet{1} << v;
                        bool cycle = true;
                        for (int v : pick)
                            if (popcount(g.neighbors(v) & subset) != 2) {
                                cycle = false;
                                break;
                            }
                        if (!cycle) continue;
                        cover.pentagons.push_back(pick);
                        for (int a = 0; a < 5; ++a)
                            for (int b = a + 1; b < 5; ++b)
                                if (g.has_edge(pick[a], pick[b]))
                                    ++cover.edge_multiplicity[{pick[a], pick[b]}];
                    }
    return cover;
}

inline Eigen::MatrixXd adjacency_matrix(const Graph& g) {
    const int n = g.vertex_count();
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
    for (auto [i, j] : g.edges()) A(i, j) = A(j, i) = 1.0;
    return A;
}

/// Adjacency eigenvalues in descending order (Jacobi eigensolver).
inline std::vector<double> adjacency_spectrum(const Graph& g) {
    const EigenDecomposition d = jacobi_eigen(adjacency_matrix(g));
    return {d.values.data(), d.values.data() + d.values.size()};
}

/// An eigenvalue tagged with its representation (p + q*sqrt(5))/2 when one
/// with integer p, q matches to 1e-9.
struct SpectrumEntry {
    double value = 0.0;
    bool in_golden_field = false;
    int p = 0, q = 0;  // value ~ (p + q*sqrt(5))/2 when tagged

    std::string closed_form() const {
        if (!in_golden_field) return "-";
        std::ostringstream os;
        os << "(" << p << (q >= 0 ? "+" : "-") << std::abs(q) << "*sqrt(5))/2";
        return os.str();
    }
};

/// Tag eigenvalues of the form (p + q*sqrt(5))/2 with integer p, q.
inline std::vector<SpectrumEntry> tag_golden_field(const std::vector<double>& spectrum,
                                                   double tol = 1e-9) {
    static const double sqrt5 = std::sqrt(5.0);
    std::vector<SpectrumEntry> out;
    out.reserve(spectrum.size());
    for (double lambda : spectrum) {
        SpectrumEntry e;
        e.value = lambda;
        for (int q = -16; q <= 16 && !e.in_golden_field; ++q) {
            const double rem = 2.0 * lambda - q * sqrt5;
            const double p = std::round(rem);
            if (std::abs(p) <= 64.0 && std::abs(rem - p) <= 2.0 * tol) {
                e.in_golden_field = true;
                e.p = static_cast<int>(p);
                e.q = q;
            }
        }
        out.push_back(e);
    }
    return out;
}

/// Complete-bipartite K_{2,2} detected on a 4-vertex set, as its bipartition.
struct K22Core {
    std::array<int, 2> side_a{};
    std::array<int, 2> side_b{};
};

/// Check whether `quad` (4 vertices) induces a K_{2,2} and recover the
/// bipartition: a 4-cycle, i.e. every induced degree 2 and no triangle.
inline std::optional<K22Core> detect_k22(const Graph& g, const std::array<int, 4>& quad) {
    VertexSet subset = 0;
    for (int v : quad) subset |= VertexSet{1} << v;
    for (int v : quad)
        if (popcount(g.neighbors(v) & subset) != 2) return std::nullopt;
    // 2-regular on 4 vertices is a 4-cycle; sides are the two non-adjacent pairs.
    K22Core core;
    core.side_a = {quad[0], 0};
    int pos = 0;
    std::array<int, 2> rest{};
    for (int k = 1; k < 4; ++k) {
        if (!g.has_edge(quad[0], quad[k]))
            core.side_a[1] = quad[k];
        else
            rest[pos++ % 2] = quad[k];
    }
    core.side_b = rest;
    if (core.side_a[0] > core.side_a[1]) std::swap(core.side_a[0], core.side_a[1]);
    if (core.side_b[0] > core.side_b[1]) std::swap(core.side_b[0], core.side_b[1]);
    return core;
}

}  // namespace ctxgap
