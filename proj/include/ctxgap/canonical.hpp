#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <stdexcept>
#include <unordered_set>
#include <vector>

#include "ctxgap/graph.hpp"

namespace ctxgap {

/// Isomorphism-class key for n <= 8: the lexicographically minimal
/// upper-triangle adjacency word over all vertex relabelings, in the same
/// column-major bit order graph6 uses.  Bit t of the word sits at position
/// (T-1-t) of `bits` (T = n(n-1)/2), so integer order equals lexicographic
/// bit order for fixed n.
struct CanonicalKey {
    std::uint64_t bits = 0;
    int n = 0;

    friend auto operator<=>(const CanonicalKey&, const CanonicalKey&) = default;
};

namespace detail {

/// Backtracking minimization of the adjacency word: new labels are assigned
/// in order; assigning label k appends the k bits (adj to labels 0..k-1) of
/// column k, and any branch whose prefix already exceeds the incumbent is cut.
class WordMinimizer {
public:
    explicit WordMinimizer(const Graph& g) : g_(&g), n_(g.vertex_count()) {
        total_bits_ = n_ * (n_ - 1) / 2;
        std::uint64_t word = 0;
        for (int j = 1; j < n_; ++j)
            for (int i = 0; i < j; ++i) word = (word << 1) | (g.has_edge(i, j) ? 1u : 0u);
        best_ = word;  // identity labeling as incumbent
    }

    std::uint64_t run() {
        perm_.assign(static_cast<std::size_t>(n_), -1);
        descend(0, 0, 0, 0);
        return best_;
    }

private:
    void descend(int k, int bits_used, std::uint64_t prefix, VertexSet used) {
        if (k == n_) {
            if (prefix < best_) best_ = prefix;
            return;
        }
        // Candidate columns sorted by bit pattern; ties by vertex id for
        // deterministic traversal.
        struct Cand {
            std::uint64_t col;
            int v;
        };
        std::vector<Cand> cands;
        cands.reserve(static_cast<std::size_t>(n_));
        for (int v = 0; v < n_; ++v) {
            if ((used >> v) & 1u) continue;
            std::uint64_t col = 0;
            const VertexSet nbr = g_->neighbors(v);
            for (int i = 0; i < k; ++i)
                col = (col << 1) | ((nbr >> perm_[static_cast<std::size_t>(i)]) & 1u);
            cands.push_back({col, v});
        }
        std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) {
            return a.col != b.col ? a.col < b.col : a.v < b.v;
        });
        for (const Cand& c : cands) {
            const int nb = bits_used + k;
            const std::uint64_t next = (prefix << k) | c.col;
            if (next > (best_ >> (total_bits_ - nb))) continue;  // prefix already worse
            perm_[static_cast<std::size_t>(k)] = c.v;
            descend(k + 1, nb, next, used | (VertexSet{1} << c.v));
        }
    }

    const Graph* g_;
    int n_;
    int total_bits_;
    std::uint64_t best_;
    std::vector<int> perm_;
};

inline Graph graph_from_word(int n, std::uint64_t word) {
    Graph g(n);
    int pos = n * (n - 1) / 2;
    for (int j = 1; j < n; ++j)
        for (int i = 0; i < j; ++i)
            if ((word >> --pos) & 1u) g.add_edge(i, j);
    return g;
}

}  // namespace detail

inline constexpr int kMaxCanonicalVertices = 8;

/// Requires n <= 8 (exhaustive search with prefix pruning).
inline CanonicalKey canonical_key(const Graph& g) {
    if (g.vertex_count() > kMaxCanonicalVertices)
        throw std::invalid_argument("canonical_key: exhaustive canonicalization limited to n <= 8");
    detail::WordMinimizer mini(g);
    return CanonicalKey{mini.run(), g.vertex_count()};
}

/// The canonically labeled representative of g's isomorphism class.
inline Graph canonical_form(const Graph& g) {
    const CanonicalKey key = canonical_key(g);
    return detail::graph_from_word(key.n, key.bits);
}

/// One canonically labeled representative per isomorphism class of simple
/// graphs on n vertices, sorted by CanonicalKey.  Built by extending every
/// (n-1)-class with each neighbor subset of a new vertex and deduplicating.
inline std::vector<Graph> enumerate_graphs(int n) {
    if (n < 1 || n > kMaxCanonicalVertices)
        throw std::invalid_argument("enumerate_graphs: n must be in [1, 8]");

    std::vector<std::uint64_t> words{0};  // n = 1
    for (int m = 2; m <= n; ++m) {
        std::unordered_set<std::uint64_t> seen;
        for (const std::uint64_t parent : words) {
            Graph base = detail::graph_from_word(m - 1, parent);
            Graph extended = disjoint_union(base, Graph(1));
            const VertexSet masks = VertexSet{1} << (m - 1);
            for (VertexSet mask = 0; mask < masks; ++mask) {
                Graph h = extended;
                for (int v = 0; v < m - 1; ++v)
                    if ((mask >> v) & 1u) h.add_edge(v, m - 1);
                seen.insert(canonical_key(h).bits);
            }
        }
        words.assign(seen.begin(), seen.end());
        std::sort(words.begin(), words.end());
    }

    std::vector<Graph> out;
    out.reserve(words.size());
    for (const std::uint64_t w : words) out.push_back(detail::graph_from_word(n, w));
    return out;
}

}  // namespace ctxgap
