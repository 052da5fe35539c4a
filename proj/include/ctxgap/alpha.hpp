#pragma once

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "ctxgap/graph.hpp"

namespace ctxgap {

enum class AlphaMethod { subset_bruteforce, clique_complement };

/// Exact independence number with one maximum independent set as witness.
struct AlphaResult {
    int alpha = 0;
    VertexSet witness = 0;
    AlphaMethod method = AlphaMethod::subset_bruteforce;
};

/// Exhaustive scan of all 2^n vertex subsets.  Requires n <= 24.
/// Witness is the first maximizer in increasing subset order, i.e. the
/// lowest bit pattern among maximum independent sets.
inline AlphaResult alpha_bruteforce(const Graph& g) {
    const int n = g.vertex_count();
    if (n > 24) throw std::invalid_argument("alpha_bruteforce: limited to n <= 24");
    AlphaResult best{0, 0, AlphaMethod::subset_bruteforce};
    const VertexSet end = VertexSet{1} << n;
    for (VertexSet s = 0; s < end; ++s) {
        if (popcount(s) <= best.alpha) continue;
        bool independent = true;
        for (VertexSet rest = s; rest;) {
            const int v = lowest_vertex(rest);
            rest &= rest - 1;
            if (g.neighbors(v) & s) {
                independent = false;
                break;
            }
        }
        if (independent) {
            best.alpha = popcount(s);
            best.witness = s;
        }
    }
    return best;
}

namespace detail {

/// Maximum-clique branch and bound with greedy-coloring bounds, vertices
/// ordered by descending degree.  Returns the clique size within `allowed`.
class MaxCliqueSolver {
public:
    explicit MaxCliqueSolver(const Graph& g) : g_(&g) {}

    int solve(VertexSet allowed) {
        best_ = 0;
        std::vector<int> cand = order_by_degree(allowed);
        expand(cand, 0);
        return best_;
    }

private:
    std::vector<int> order_by_degree(VertexSet allowed) const {
        std::vector<int> vs;
        for (VertexSet rest = allowed; rest;) {
            const int v = lowest_vertex(rest);
            rest &= rest - 1;
            vs.push_back(v);
        }
        std::stable_sort(vs.begin(), vs.end(), [&](int a, int b) {
            return popcount(g_->neighbors(a) & allowed) > popcount(g_->neighbors(b) & allowed);
        });
        return vs;
    }

    void expand(const std::vector<int>& cand, int size) {
        if (cand.empty()) {
            best_ = std::max(best_, size);
            return;
        }
        // Greedy coloring: each class is an independent set, so a clique can
        // take at most one vertex per class.  Re-emit candidates class by
        // class so the color bound is non-decreasing along the list.
        std::vector<VertexSet> classes;
        for (const int v : cand) {
            std::size_t c = 0;
            while (c < classes.size() && (g_->neighbors(v) & classes[c])) ++c;
            if (c == classes.size()) classes.push_back(0);
            classes[c] |= VertexSet{1} << v;
        }
        std::vector<int> ordered;
        std::vector<int> bound;
        ordered.reserve(cand.size());
        bound.reserve(cand.size());
        for (std::size_t c = 0; c < classes.size(); ++c)
            for (VertexSet rest = classes[c]; rest;) {
                const int v = lowest_vertex(rest);
                rest &= rest - 1;
                ordered.push_back(v);
                bound.push_back(static_cast<int>(c) + 1);
            }
        for (std::size_t k = ordered.size(); k-- > 0;) {
            if (size + bound[k] <= best_) break;  // bound is non-decreasing in k
            const int v = ordered[k];
            std::vector<int> next;
            next.reserve(k);
            for (std::size_t m = 0; m < k; ++m)
                if (g_->has_edge(v, ordered[m])) next.push_back(ordered[m]);
            expand(next, size + 1);
        }
        best_ = std::max(best_, size);
    }

    const Graph* g_;
    int best_ = 0;
};

inline int independence_number_within(const Graph& complement_g, VertexSet allowed) {
    MaxCliqueSolver solver(complement_g);
    return solver.solve(allowed);
}

}  // namespace detail

/// Exact independence number via maximum clique on the complement.
/// Witness tie-break: lexicographically smallest vertex set.
inline AlphaResult alpha_clique(const Graph& g) {
    const Graph cg = g.complement();
    const int alpha = detail::independence_number_within(cg, g.full_set());

    // Greedy completion yields the lexicographically smallest witness.
    VertexSet witness = 0;
    VertexSet candidates = g.full_set();
    int remaining = alpha;
    for (int v = 0; v < g.vertex_count() && remaining > 0; ++v) {
        if (!((candidates >> v) & 1u)) continue;
        const VertexSet rest = candidates & ~g.neighbors(v) & ~(VertexSet{1} << v);
        if (1 + detail::independence_number_within(cg, rest) >= remaining) {
            witness |= VertexSet{1} << v;
            candidates = rest;
            --remaining;
        }
    }
    return AlphaResult{alpha, witness, AlphaMethod::clique_complement};
}

}  // namespace ctxgap
