#pragma once

#include "rtl/graph.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace rtl {

/// Bit c set means color c (0-based; color c is printed as c+1).
using ColorSet = std::uint64_t;
using ColorId = int;

inline constexpr int kMaxColors = 64;

inline constexpr ColorSet all_colors(int r) {
    return r >= 64 ? ~ColorSet{0} : (ColorSet{1} << r) - 1;
}

/// An r-template: a color list per edge of the host, indexed by EdgeId.
class Template {
public:
    Template(Graph host, int r, std::vector<ColorSet> lists);

    const Graph& host() const { return host_; }
    int colors() const { return r_; }
    const std::vector<ColorSet>& lists() const { return lists_; }
    ColorSet list(EdgeId e) const { return lists_[e]; }
    int list_size(EdgeId e) const { return popcount(lists_[e]); }
    bool is_full(EdgeId e) const { return lists_[e] == all_colors(r_); }
    bool is_complete() const;

    friend bool operator==(const Template&, const Template&) = default;

private:
    Graph host_;
    int r_;
    std::vector<ColorSet> lists_;
};

/// Every list equals [r].
Template complete_template(const Graph& g, int r);
/// Singleton lists; colors are 0-based and must be < r.
Template from_coloring(const Graph& g, const std::vector<ColorId>& colors, int r);

bool is_subtemplate(const Template& a, const Template& b);

/// Lists of size >= threshold become [r]; the rest are unchanged.
Template lift_template(const Template& t, int threshold = 6);

/// Product of list sizes over the edges of `state` at v, looked up in t.
/// `state` must be a spanning subgraph of t's host.
Count list_product(const Template& t, const Graph& state, int v);
Count list_product(const Template& t, int v);

/// Neighbors u of v in `state` with |L(uv)| = r.
VertexSet r_neighborhood(const Template& t, const Graph& state, int v);
VertexSet r_neighborhood(const Template& t, int v);

/// The six edge ids of the K_4 on `quad` (lexicographic pair order).
std::array<EdgeId, 6> k4_edges(const Graph& g, VertexSet quad);

/// Number of injective selections c_i in lists[i] (a system of distinct representatives).
std::uint64_t count_injective_selections(const std::array<ColorSet, 6>& lists);

/// Counts rainbow copies as (edge, color) selections, or counts the underlying K_4s
/// that admit at least one rainbow selection.
enum class CopyReading { Selections, Subgraphs };

Count count_rainbow_copies(const Template& t, CopyReading reading = CopyReading::Selections);

/// Rainbow copies whose K_4 lies in `sub` and contains the triangle `tri` (3 vertices).
/// `sub` is a spanning subgraph of the host with the same labels.
Count count_rainbow_copies_through_triangle(const Template& t, VertexSet tri, const Graph& sub,
                                            CopyReading reading = CopyReading::Selections);

struct RainbowCopy {
    std::array<EdgeId, 6> edges;
    std::array<ColorId, 6> colors;
};

/// Enumerates every rainbow copy, K_4 by K_4 in lexicographic order.
void for_each_rainbow_copy(const Template& t, const std::function<void(const RainbowCopy&)>& visit);

/// Histogram m_0..m_r of list sizes.
struct ListSizeHistogram {
    std::vector<std::uint64_t> counts;  // counts[i] = number of edges with |L(e)| = i
    std::uint64_t small_lists = 0;      // m_2 + ... + m_5
};

ListSizeHistogram list_size_histogram(const Template& t);

}  // namespace rtl
