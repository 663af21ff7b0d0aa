#include "rtl/graph.hpp"

#include "rtl/error.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace rtl {

namespace {

void check_order(int n) {
    if (n < 0) fail(ErrorKind::InvalidArgument, "negative vertex count");
    if (n > kMaxVertices) {
        fail(ErrorKind::UnsupportedSize,
             "graphs are limited to 64 vertices, got " + std::to_string(n));
    }
}

}  // namespace

Graph::Graph(int n) {
    check_order(n);
    n_ = n;
    adj_.assign(static_cast<std::size_t>(n), 0);
    index_edges();
}

Graph Graph::from_edges(int n, std::span<const std::pair<int, int>> edges) {
    check_order(n);
    std::vector<VertexSet> rows(static_cast<std::size_t>(n), 0);
    for (auto [u, v] : edges) {
        if (u < 0 || v < 0 || u >= n || v >= n || u == v) {
            fail(ErrorKind::InvalidArgument,
                 "bad edge (" + std::to_string(u) + "," + std::to_string(v) + ")");
        }
        rows[static_cast<std::size_t>(u)] |= vertex_bit(v);
        rows[static_cast<std::size_t>(v)] |= vertex_bit(u);
    }
    return from_adjacency(std::move(rows));
}

Graph Graph::from_adjacency(std::vector<VertexSet> rows) {
    const int n = static_cast<int>(rows.size());
    check_order(n);
    for (int v = 0; v < n; ++v) {
        const VertexSet row = rows[static_cast<std::size_t>(v)];
        if (row & ~all_vertices(n)) fail(ErrorKind::InvalidArgument, "neighbor out of range");
        if (row & vertex_bit(v)) fail(ErrorKind::InvalidArgument, "self loop");
        for (VertexSet rest = row; rest; rest &= rest - 1) {
            const int u = std::countr_zero(rest);
            if (!(rows[static_cast<std::size_t>(u)] & vertex_bit(v))) {
                fail(ErrorKind::InvalidArgument, "asymmetric adjacency");
            }
        }
    }
    Graph g;
    g.n_ = n;
    g.adj_ = std::move(rows);
    g.index_edges();
    return g;
}

Graph Graph::complete(int n) {
    check_order(n);
    std::vector<VertexSet> rows(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) rows[static_cast<std::size_t>(v)] = all_vertices(n) & ~vertex_bit(v);
    return from_adjacency(std::move(rows));
}

Graph Graph::cycle(int n) {
    if (n < 3) fail(ErrorKind::InvalidArgument, "cycle needs at least 3 vertices");
    std::vector<std::pair<int, int>> edges;
    for (int v = 0; v < n; ++v) edges.emplace_back(v, (v + 1) % n);
    return from_edges(n, edges);
}

Graph Graph::path(int vertices) {
    std::vector<std::pair<int, int>> edges;
    for (int v = 0; v + 1 < vertices; ++v) edges.emplace_back(v, v + 1);
    return from_edges(vertices, edges);
}

void Graph::index_edges() {
    edges_.clear();
    ids_.assign(static_cast<std::size_t>(n_) * static_cast<std::size_t>(n_), -1);
    for (int u = 0; u < n_; ++u) {
        for (VertexSet rest = adj_[static_cast<std::size_t>(u)] & vertices_above(u); rest;
             rest &= rest - 1) {
            const int v = std::countr_zero(rest);
            const auto id = static_cast<std::int32_t>(edges_.size());
            ids_[static_cast<std::size_t>(u * n_ + v)] = id;
            ids_[static_cast<std::size_t>(v * n_ + u)] = id;
            edges_.push_back({u, v});
        }
    }
}

std::optional<EdgeId> Graph::edge_id(int u, int v) const {
    if (u < 0 || v < 0 || u >= n_ || v >= n_) return std::nullopt;
    const auto id = ids_[static_cast<std::size_t>(u * n_ + v)];
    if (id < 0) return std::nullopt;
    return static_cast<EdgeId>(id);
}

EdgeId Graph::require_edge(int u, int v) const {
    if (auto id = edge_id(u, v)) return *id;
    fail(ErrorKind::InvalidArgument,
         "(" + std::to_string(u) + "," + std::to_string(v) + ") is not an edge");
}

Graph Graph::isolate(VertexSet removed) const {
    std::vector<VertexSet> rows = adj_;
    for (int v = 0; v < n_; ++v) {
        auto& row = rows[static_cast<std::size_t>(v)];
        row = (removed & vertex_bit(v)) ? 0 : row & ~removed;
    }
    return from_adjacency(std::move(rows));
}

bool Graph::is_spanning_subgraph_of(const Graph& host) const {
    if (host.n_ != n_) return false;
    for (int v = 0; v < n_; ++v) {
        if (neighbors(v) & ~host.neighbors(v)) return false;
    }
    return true;
}

VertexSet Partition::members(int c) const {
    VertexSet s = 0;
    for (std::size_t v = 0; v < assignment.size(); ++v) {
        if (assignment[v] == c) s |= vertex_bit(static_cast<int>(v));
    }
    return s;
}

Partition turan_partition(int n, int parts) {
    if (parts < 1) fail(ErrorKind::InvalidArgument, "Turan graph needs at least one class");
    check_order(n);
    Partition p{parts, std::vector<int>(static_cast<std::size_t>(n))};
    const int base = n / parts;
    const int larger = n % parts;
    int v = 0;
    for (int c = 0; c < parts; ++c) {
        const int size = base + (c < larger ? 1 : 0);
        for (int i = 0; i < size; ++i) p.assignment[static_cast<std::size_t>(v++)] = c;
    }
    return p;
}

Graph turan_graph(int n, int parts) {
    const Partition p = turan_partition(n, parts);
    std::vector<VertexSet> rows(static_cast<std::size_t>(n), 0);
    for (int v = 0; v < n; ++v) {
        rows[static_cast<std::size_t>(v)] =
            all_vertices(n) & ~p.members(p.assignment[static_cast<std::size_t>(v)]);
    }
    return Graph::from_adjacency(std::move(rows));
}

Count extremal_number(std::uint64_t n, int k) {
    if (k < 2) fail(ErrorKind::InvalidArgument, "extremal number needs k >= 2");
    const std::uint64_t parts = static_cast<std::uint64_t>(k - 1);
    const std::uint64_t base = n / parts;
    const std::uint64_t larger = n % parts;
    // (n^2 - sum of squared class sizes) / 2
    Count squares = Count(larger) * Count(base + 1) * Count(base + 1) +
                    Count(parts - larger) * Count(base) * Count(base);
    return (Count(n) * Count(n) - squares) / 2;
}

namespace {

std::uint64_t count_in(const Graph& g, VertexSet candidates, int remaining) {
    if (remaining == 0) return 1;
    if (remaining == 1) return static_cast<std::uint64_t>(popcount(candidates));
    std::uint64_t total = 0;
    for (VertexSet rest = candidates; rest; rest &= rest - 1) {
        const int v = std::countr_zero(rest);
        total += count_in(g, candidates & g.neighbors(v) & vertices_above(v), remaining - 1);
    }
    return total;
}

void collect_in(const Graph& g, VertexSet chosen, VertexSet candidates, int remaining,
                std::vector<VertexSet>& out) {
    if (remaining == 0) {
        out.push_back(chosen);
        return;
    }
    for (VertexSet rest = candidates; rest; rest &= rest - 1) {
        const int v = std::countr_zero(rest);
        collect_in(g, chosen | vertex_bit(v), candidates & g.neighbors(v) & vertices_above(v),
                   remaining - 1, out);
    }
}

}  // namespace

Count count_cliques(const Graph& g, int k) {
    if (k < 1) fail(ErrorKind::InvalidArgument, "clique order must be >= 1");
    return Count(count_in(g, g.vertices(), k));
}

std::vector<VertexSet> enumerate_cliques(const Graph& g, int k) {
    if (k < 1) fail(ErrorKind::InvalidArgument, "clique order must be >= 1");
    std::vector<VertexSet> out;
    collect_in(g, 0, g.vertices(), k, out);
    return out;
}

std::uint64_t count_cliques_containing(const Graph& g, VertexSet core, int k) {
    const int have = popcount(core);
    if (have > k) return 0;
    VertexSet common = g.vertices() & ~core;
    for (VertexSet rest = core; rest; rest &= rest - 1) {
        const int v = std::countr_zero(rest);
        if ((g.neighbors(v) & core) != (core & ~vertex_bit(v))) return 0;
        common &= g.neighbors(v);
    }
    return count_in(g, common, k - have);
}

std::size_t internal_edges(const Graph& g, const Partition& p) {
    std::size_t total = 0;
    for (const Edge& e : g.edges()) {
        if (p.assignment[static_cast<std::size_t>(e.u)] ==
            p.assignment[static_cast<std::size_t>(e.v)]) {
            ++total;
        }
    }
    return total;
}

namespace {

struct ClosenessSearch {
    const Graph& g;
    int k;
    std::vector<int> order;  // vertices by descending degree
    std::vector<VertexSet> members;
    std::vector<int> current;
    std::size_t best;
    std::vector<int> best_assignment;

    void run(std::size_t depth, int used, std::size_t cost) {
        if (cost >= best) return;
        if (depth == order.size()) {
            best = cost;
            best_assignment = current;
            return;
        }
        const int v = order[depth];
        // Class labels are interchangeable: a new class is only ever the next unused one.
        const int limit = std::min(used + 1, k);
        for (int c = 0; c < limit; ++c) {
            const auto added = static_cast<std::size_t>(
                popcount(g.neighbors(v) & members[static_cast<std::size_t>(c)]));
            members[static_cast<std::size_t>(c)] |= vertex_bit(v);
            current[static_cast<std::size_t>(v)] = c;
            run(depth + 1, std::max(used, c + 1), cost + added);
            members[static_cast<std::size_t>(c)] &= ~vertex_bit(v);
        }
    }
};

Partition local_search(const Graph& g, int k) {
    const int n = g.order();
    Partition p{k, std::vector<int>(static_cast<std::size_t>(n), 0)};
    std::vector<VertexSet> members(static_cast<std::size_t>(k), 0);
    auto best_class = [&](int v) {
        int best = 0;
        int best_hits = kMaxVertices + 1;
        for (int c = 0; c < k; ++c) {
            const int hits = popcount(g.neighbors(v) & members[static_cast<std::size_t>(c)]);
            if (hits < best_hits) {
                best = c;
                best_hits = hits;
            }
        }
        return best;
    };
    for (int v = 0; v < n; ++v) {
        const int c = best_class(v);
        p.assignment[static_cast<std::size_t>(v)] = c;
        members[static_cast<std::size_t>(c)] |= vertex_bit(v);
    }
    for (bool improved = true; improved;) {
        improved = false;
        for (int v = 0; v < n; ++v) {
            const int from = p.assignment[static_cast<std::size_t>(v)];
            members[static_cast<std::size_t>(from)] &= ~vertex_bit(v);
            const int to = best_class(v);
            const int old_hits = popcount(g.neighbors(v) & members[static_cast<std::size_t>(from)]);
            const int new_hits = popcount(g.neighbors(v) & members[static_cast<std::size_t>(to)]);
            const int target = new_hits < old_hits ? to : from;
            if (target != from) improved = true;
            p.assignment[static_cast<std::size_t>(v)] = target;
            members[static_cast<std::size_t>(target)] |= vertex_bit(v);
        }
    }
    return p;
}

}  // namespace

Closeness closeness_to_kpartite(const Graph& g, int k, int exact_cap) {
    if (k < 1) fail(ErrorKind::InvalidArgument, "closeness needs k >= 1");
    const int n = g.order();
    Partition start = local_search(g, k);
    Closeness result{internal_edges(g, start), start, true};
    if (n > exact_cap) {
        result.exact = false;
        return result;
    }
    ClosenessSearch search{g, k, {}, std::vector<VertexSet>(static_cast<std::size_t>(k), 0),
                           std::vector<int>(static_cast<std::size_t>(n), 0),
                           result.internal_edges + 1, {}};
    search.order.resize(static_cast<std::size_t>(n));
    std::iota(search.order.begin(), search.order.end(), 0);
    std::stable_sort(search.order.begin(), search.order.end(),
                     [&](int a, int b) { return g.degree(a) > g.degree(b); });
    search.run(0, 0, 0);
    if (!search.best_assignment.empty()) {
        result.internal_edges = search.best;
        result.partition.assignment = search.best_assignment;
    }
    return result;
}

}  // namespace rtl
