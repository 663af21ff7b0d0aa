#pragma once

#include "rtl/exact.hpp"

#include <bit>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace rtl {

using VertexSet = std::uint64_t;
using EdgeId = std::size_t;

inline constexpr int kMaxVertices = 64;

inline constexpr VertexSet vertex_bit(int v) { return VertexSet{1} << v; }

inline constexpr VertexSet all_vertices(int n) {
    return n >= 64 ? ~VertexSet{0} : (VertexSet{1} << n) - 1;
}

/// Vertices strictly above v.
inline constexpr VertexSet vertices_above(int v) {
    return v >= 63 ? VertexSet{0} : ~VertexSet{0} << (v + 1);
}

inline int popcount(VertexSet s) { return std::popcount(s); }

struct Edge {
    int u = 0;
    int v = 0;  // u < v

    friend bool operator==(const Edge&, const Edge&) = default;
};

/// Dense simple graph on at most 64 vertices. Edges are numbered in
/// lexicographic (u, v) order, u < v; every module addresses edges by that id.
class Graph {
public:
    Graph() = default;
    explicit Graph(int n);

    static Graph from_edges(int n, std::span<const std::pair<int, int>> edges);
    /// Rows must be symmetric and irreflexive.
    static Graph from_adjacency(std::vector<VertexSet> rows);

    static Graph complete(int n);
    static Graph cycle(int n);
    static Graph path(int vertices);

    int order() const { return n_; }
    std::size_t size() const { return edges_.size(); }

    VertexSet neighbors(int v) const { return adj_[static_cast<std::size_t>(v)]; }
    bool adjacent(int u, int v) const { return (neighbors(u) >> v) & 1u; }
    int degree(int v) const { return popcount(neighbors(v)); }
    VertexSet vertices() const { return all_vertices(n_); }

    const std::vector<Edge>& edges() const { return edges_; }
    const Edge& edge(EdgeId id) const { return edges_[id]; }
    std::optional<EdgeId> edge_id(int u, int v) const;
    EdgeId require_edge(int u, int v) const;

    const std::vector<VertexSet>& rows() const { return adj_; }

    /// Same vertex labels, only the edges whose id passes `keep`.
    template <class Predicate>
    Graph filter_edges(Predicate keep) const {
        std::vector<VertexSet> rows(adj_.size(), 0);
        for (EdgeId id = 0; id < edges_.size(); ++id) {
            if (!keep(id)) continue;
            rows[static_cast<std::size_t>(edges_[id].u)] |= vertex_bit(edges_[id].v);
            rows[static_cast<std::size_t>(edges_[id].v)] |= vertex_bit(edges_[id].u);
        }
        return from_adjacency(std::move(rows));
    }

    /// Same vertex labels with every edge touching `removed` deleted.
    Graph isolate(VertexSet removed) const;

    /// True when every edge of this graph is an edge of `host` (same order).
    bool is_spanning_subgraph_of(const Graph& host) const;

    friend bool operator==(const Graph& a, const Graph& b) {
        return a.n_ == b.n_ && a.adj_ == b.adj_;
    }

private:
    void index_edges();

    int n_ = 0;
    std::vector<VertexSet> adj_;
    std::vector<Edge> edges_;
    std::vector<std::int32_t> ids_;  // n*n, -1 for non-edges
};

struct Partition {
    int classes = 0;
    std::vector<int> assignment;  // vertex -> class in [0, classes)

    VertexSet members(int c) const;
};

/// Complete multipartite graph with `parts` classes as equal as possible;
/// classes are contiguous vertex ranges, larger classes first.
Graph turan_graph(int n, int parts);
Partition turan_partition(int n, int parts);

/// Edge count of the Turan graph T_{k-1}(n).
Count extremal_number(std::uint64_t n, int k);

Count count_cliques(const Graph& g, int k);
std::vector<VertexSet> enumerate_cliques(const Graph& g, int k);
/// Number of K_k containing every vertex of `core` (core must be a clique).
std::uint64_t count_cliques_containing(const Graph& g, VertexSet core, int k);

std::size_t internal_edges(const Graph& g, const Partition& p);

struct Closeness {
    std::size_t internal_edges = 0;
    Partition partition;
    bool exact = true;  // false: local-search upper bound
};

inline constexpr int kDefaultClosenessExactCap = 14;

/// Minimum number of internal edges over all partitions into `k` classes.
Closeness closeness_to_kpartite(const Graph& g, int k,
                                int exact_cap = kDefaultClosenessExactCap);

}  // namespace rtl
