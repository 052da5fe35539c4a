#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ctxgap {

/// Bitset over vertex indices 0..n-1 (n <= 32).
using VertexSet = std::uint32_t;

inline int popcount(VertexSet s) { return std::popcount(s); }
inline int lowest_vertex(VertexSet s) { return std::countr_zero(s); }

/// Simple undirected graph on up to 32 vertices, one adjacency bitset per
/// vertex.  Symmetric, loop-free by construction.
class Graph {
public:
    static constexpr int kMaxVertices = 32;

    explicit Graph(int n) : n_(n), adj_{} {
        if (n < 1 || n > kMaxVertices)
            throw std::invalid_argument("Graph: vertex count must be in [1, 32], got " +
                                        std::to_string(n));
    }

    static Graph from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
        Graph g(n);
        for (auto [i, j] : edges) g.add_edge(i, j);
        return g;
    }

    int vertex_count() const { return n_; }

    int edge_count() const {
        int bits = 0;
        for (int v = 0; v < n_; ++v) bits += popcount(adj_[v]);
        return bits / 2;
    }

    bool has_edge(int i, int j) const {
        check_vertex(i);
        check_vertex(j);
        return (adj_[i] >> j) & 1u;
    }

    void add_edge(int i, int j) {
        check_vertex(i);
        check_vertex(j);
        if (i == j) throw std::invalid_argument("Graph: self-loops are not allowed");
        adj_[i] |= VertexSet{1} << j;
        adj_[j] |= VertexSet{1} << i;
    }

    void remove_edge(int i, int j) {
        check_vertex(i);
        check_vertex(j);
        adj_[i] &= ~(VertexSet{1} << j);
        adj_[j] &= ~(VertexSet{1} << i);
    }

    VertexSet neighbors(int v) const {
        check_vertex(v);
        return adj_[v];
    }

    int degree(int v) const { return popcount(neighbors(v)); }

    /// All vertices as a bitset.
    VertexSet full_set() const {
        return n_ == 32 ? ~VertexSet{0} : (VertexSet{1} << n_) - 1;
    }

    /// Edges as (i, j) pairs with i < j, sorted lexicographically.
    std::vector<std::pair<int, int>> edges() const {
        std::vector<std::pair<int, int>> out;
        out.reserve(static_cast<std::size_t>(edge_count()));
        for (int i = 0; i < n_; ++i)
            for (int j = i + 1; j < n_; ++j)
                if ((adj_[i] >> j) & 1u) out.emplace_back(i, j);
        return out;
    }

    Graph complement() const {
        Graph g(n_);
        const VertexSet all = full_set();
        for (int v = 0; v < n_; ++v)
            g.adj_[v] = (~adj_[v] & all) & ~(VertexSet{1} << v);
        return g;
    }

    bool operator==(const Graph& other) const {
        if (n_ != other.n_) return false;
        for (int v = 0; v < n_; ++v)
            if (adj_[v] != other.adj_[v]) return false;
        return true;
    }

private:
    void check_vertex(int v) const {
        if (v < 0 || v >= n_)
            throw std::out_of_range("Graph: vertex " + std::to_string(v) +
                                    " out of range for n=" + std::to_string(n_));
    }

    int n_;
    std::array<VertexSet, kMaxVertices> adj_;
};

/// BFS reachability from vertex 0.  A single vertex counts as connected.
inline bool is_connected(const Graph& g) {
    const int n = g.vertex_count();
    VertexSet seen = 1;
    VertexSet frontier = 1;
    while (frontier) {
        VertexSet next = 0;
        while (frontier) {
            int v = lowest_vertex(frontier);
            frontier &= frontier - 1;
            next |= g.neighbors(v) & ~seen;
        }
        seen |= next;
        frontier = next;
    }
    return seen == g.full_set();
}

/// Vertex degrees in ascending order.
inline std::vector<int> degree_sequence(const Graph& g) {
    std::vector<int> deg(static_cast<std::size_t>(g.vertex_count()));
    for (int v = 0; v < g.vertex_count(); ++v) deg[static_cast<std::size_t>(v)] = g.degree(v);
    std::sort(deg.begin(), deg.end());
    return deg;
}

inline Graph empty_graph(int n) { return Graph(n); }

inline Graph complete_graph(int n) {
    Graph g(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) g.add_edge(i, j);
    return g;
}

inline Graph cycle_graph(int n) {
    if (n < 3) throw std::invalid_argument("cycle_graph: need n >= 3");
    Graph g(n);
    for (int i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
    return g;
}

inline Graph path_graph(int n) {
    Graph g(n);
    for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
    return g;
}

/// The Wagner graph: C8 plus the four long diagonals (i, i+4).  3-regular,
/// 12 edges.
inline Graph wagner_graph() {
    Graph g = cycle_graph(8);
    for (int i = 0; i < 4; ++i) g.add_edge(i, i + 4);
    return g;
}

/// The Quad-C5 graph: 8 vertices, 10 edges, four induced pentagons with
/// every edge shared by exactly two of them.
inline Graph quad_c5_graph() {
    return Graph::from_edges(8, {{0, 3}, {0, 5}, {1, 4}, {1, 6}, {2, 5},
                                 {2, 6}, {2, 7}, {3, 6}, {3, 7}, {4, 7}});
}

/// Disjoint union; vertices of `b` are shifted up by a.vertex_count().
inline Graph disjoint_union(const Graph& a, const Graph& b) {
    const int na = a.vertex_count();
    const int n = na + b.vertex_count();
    if (n > Graph::kMaxVertices)
        throw std::invalid_argument("disjoint_union: combined graph exceeds 32 vertices");
    Graph g(n);
    for (auto [i, j] : a.edges()) g.add_edge(i, j);
    for (auto [i, j] : b.edges()) g.add_edge(na + i, na + j);
    return g;
}

}  // namespace ctxgap
