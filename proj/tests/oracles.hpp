#pragma once

// Slow reference implementations used only by tests. They share nothing with the
// library beyond the Graph/Template containers.

#include "rtl/graph.hpp"
#include "rtl/template.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <vector>

namespace oracle {

using rtl::Count;
using rtl::Graph;

inline std::vector<std::vector<int>> subsets(int n, int k) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    auto rec = [&](auto&& self, int start) -> void {
        if (static_cast<int>(cur.size()) == k) {
            out.push_back(cur);
            return;
        }
        for (int v = start; v < n; ++v) {
            cur.push_back(v);
            self(self, v + 1);
            cur.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

inline bool is_clique(const Graph& g, const std::vector<int>& vs) {
    for (std::size_t a = 0; a < vs.size(); ++a)
        for (std::size_t b = a + 1; b < vs.size(); ++b)
            if (!g.adjacent(vs[a], vs[b])) return false;
    return true;
}

inline std::vector<std::vector<int>> cliques(const Graph& g, int k) {
    std::vector<std::vector<int>> out;
    for (auto& s : subsets(g.order(), k))
        if (is_clique(g, s)) out.push_back(s);
    return out;
}

// Edge index lists of every K_k.
inline std::vector<std::vector<std::size_t>> clique_edge_sets(const Graph& g, int k) {
    std::vector<std::vector<std::size_t>> out;
    for (auto& c : cliques(g, k)) {
        std::vector<std::size_t> es;
        for (std::size_t a = 0; a < c.size(); ++a)
            for (std::size_t b = a + 1; b < c.size(); ++b) es.push_back(*g.edge_id(c[a], c[b]));
        out.push_back(es);
    }
    return out;
}

inline bool rainbow(const std::vector<int>& colors, const std::vector<std::size_t>& es) {
    std::set<int> seen;
    for (auto e : es) seen.insert(colors[e]);
    return seen.size() == es.size();
}

/// Every r-coloring, checked clique by clique.
inline std::uint64_t count_colorings(const Graph& g, int r, int k) {
    const auto cs = clique_edge_sets(g, k);
    const std::size_t m = g.size();
    std::vector<int> colors(m, 0);
    std::uint64_t total = 0;
    while (true) {
        bool ok = true;
        for (auto& es : cs) {
            if (rainbow(colors, es)) {
                ok = false;
                break;
            }
        }
        total += ok;
        std::size_t i = 0;
        while (i < m && ++colors[i] == r) colors[i++] = 0;
        if (i == m) break;
    }
    return total;
}

/// Partitions of the edge set by number of blocks, via restricted growth strings.
inline std::vector<Count> partition_polynomial(const Graph& g, int k) {
    const auto cs = clique_edge_sets(g, k);
    const std::size_t m = g.size();
    std::vector<Count> coeffs(m + 1, 0);
    std::vector<int> a(m, 0);
    auto rec = [&](auto&& self, std::size_t i, int blocks) -> void {
        if (i == m) {
            for (auto& es : cs)
                if (rainbow(a, es)) return;
            coeffs[static_cast<std::size_t>(blocks)] += 1;
            return;
        }
        for (int b = 0; b <= blocks; ++b) {
            a[i] = b;
            self(self, i + 1, std::max(blocks, b + 1));
        }
    };
    if (m == 0) {
        coeffs[0] = 1;
        return coeffs;
    }
    rec(rec, 0, 0);
    return coeffs;
}

inline std::uint64_t perm_mask(const Graph& g, const std::vector<int>& p) {
    const int n = g.order();
    std::uint64_t mask = 0;
    int bit = 0;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v, ++bit)
            if (g.adjacent(p[static_cast<std::size_t>(u)], p[static_cast<std::size_t>(v)]))
                mask |= std::uint64_t{1} << bit;
    return mask;
}

/// Isomorphism-invariant key: least relabeled edge mask.
inline std::uint64_t canonical_key(const Graph& g) {
    std::vector<int> p(static_cast<std::size_t>(g.order()));
    std::iota(p.begin(), p.end(), 0);
    std::uint64_t best = ~std::uint64_t{0};
    do best = std::min(best, perm_mask(g, p));
    while (std::next_permutation(p.begin(), p.end()));
    return best;
}

inline Graph from_mask(int n, std::uint64_t mask) {
    std::vector<std::pair<int, int>> es;
    int bit = 0;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v, ++bit)
            if ((mask >> bit) & 1u) es.emplace_back(u, v);
    return Graph::from_edges(n, es);
}

/// All labeled graphs on n vertices.
inline std::vector<Graph> all_labeled(int n) {
    const int m = n * (n - 1) / 2;
    std::vector<Graph> out;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) out.push_back(from_mask(n, mask));
    return out;
}

inline std::size_t count_classes(int n) {
    std::set<std::uint64_t> keys;
    for (const Graph& g : all_labeled(n)) keys.insert(canonical_key(g));
    return keys.size();
}

/// Minimum internal edges over all k^n vertex labelings.
inline std::size_t closeness(const Graph& g, int k) {
    const int n = g.order();
    std::vector<int> a(static_cast<std::size_t>(n), 0);
    std::size_t best = g.size();
    while (true) {
        std::size_t internal = 0;
        for (const auto& e : g.edges()) internal += a[static_cast<std::size_t>(e.u)] == a[static_cast<std::size_t>(e.v)];
        best = std::min(best, internal);
        int i = 0;
        while (i < n && ++a[static_cast<std::size_t>(i)] == k) a[static_cast<std::size_t>(i++)] = 0;
        if (i == n) break;
    }
    return best;
}

struct HyperEdge {
    std::vector<std::pair<std::size_t, int>> pairs;  // (edge, color), sorted
};

/// Rainbow K_4 copies as (edge, color) sets by trying every color assignment.
inline std::vector<std::vector<std::pair<std::size_t, int>>> rainbow_copies(const rtl::Template& t) {
    std::vector<std::vector<std::pair<std::size_t, int>>> out;
    for (auto& es : clique_edge_sets(t.host(), 4)) {
        std::array<int, 6> c{};
        auto rec = [&](auto&& self, std::size_t i) -> void {
            if (i == 6) {
                std::set<int> s(c.begin(), c.end());
                if (s.size() != 6) return;
                std::vector<std::pair<std::size_t, int>> h;
                for (std::size_t j = 0; j < 6; ++j) h.emplace_back(es[j], c[j]);
                std::sort(h.begin(), h.end());
                out.push_back(h);
                return;
            }
            for (int col = 0; col < t.colors(); ++col) {
                if (!((t.list(es[i]) >> col) & 1u)) continue;
                c[i] = col;
                self(self, i + 1);
            }
        };
        rec(rec, 0);
    }
    return out;
}

/// Delta_j for j = 1..6 from an explicit hyperedge list.
inline std::array<std::uint64_t, 7> max_codegrees(
    const std::vector<std::vector<std::pair<std::size_t, int>>>& edges) {
    std::array<std::uint64_t, 7> best{};
    for (int j = 1; j <= 6; ++j) {
        std::map<std::vector<std::pair<std::size_t, int>>, std::uint64_t> counts;
        for (auto& h : edges)
            for (auto& idx : subsets(6, j)) {
                std::vector<std::pair<std::size_t, int>> key;
                for (int i : idx) key.push_back(h[static_cast<std::size_t>(i)]);
                best[static_cast<std::size_t>(j)] = std::max(best[static_cast<std::size_t>(j)], ++counts[key]);
            }
    }
    return best;
}

inline rtl::Template random_template(std::mt19937_64& rng, const Graph& g, int r, double keep = 0.5) {
    std::bernoulli_distribution coin(keep);
    std::vector<rtl::ColorSet> lists;
    for (std::size_t e = 0; e < g.size(); ++e) {
        rtl::ColorSet s = 0;
        for (int c = 0; c < r; ++c)
            if (coin(rng)) s |= rtl::ColorSet{1} << c;
        lists.push_back(s);
    }
    return rtl::Template(g, r, lists);
}

inline Graph random_graph(std::mt19937_64& rng, int n, double p) {
    std::bernoulli_distribution coin(p);
    std::vector<std::pair<int, int>> es;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (coin(rng)) es.emplace_back(u, v);
    return Graph::from_edges(n, es);
}

}  // namespace oracle
