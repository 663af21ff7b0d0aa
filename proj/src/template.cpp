#include "rtl/template.hpp"

#include "rtl/error.hpp"

#include <algorithm>
#include <numeric>

namespace rtl {

Template::Template(Graph host, int r, std::vector<ColorSet> lists)
    : host_(std::move(host)), r_(r), lists_(std::move(lists)) {
    if (r_ < 1) fail(ErrorKind::InvalidArgument, "templates need r >= 1");
    if (r_ > kMaxColors) {
        fail(ErrorKind::UnsupportedColors, "at most 64 colors, got " + std::to_string(r_));
    }
    if (lists_.size() != host_.size()) {
        fail(ErrorKind::InvalidArgument, "template needs one list per host edge");
    }
    for (ColorSet list : lists_) {
        if (list & ~all_colors(r_)) fail(ErrorKind::InvalidColor, "list color outside [r]");
    }
}

bool Template::is_complete() const {
    return std::all_of(lists_.begin(), lists_.end(),
                       [&](ColorSet s) { return s == all_colors(r_); });
}

Template complete_template(const Graph& g, int r) {
    if (r > kMaxColors) fail(ErrorKind::UnsupportedColors, "at most 64 colors");
    return Template(g, r, std::vector<ColorSet>(g.size(), all_colors(r)));
}

Template from_coloring(const Graph& g, const std::vector<ColorId>& colors, int r) {
    if (colors.size() != g.size()) {
        fail(ErrorKind::InvalidArgument, "coloring needs one color per edge");
    }
    if (r > kMaxColors) fail(ErrorKind::UnsupportedColors, "at most 64 colors");
    std::vector<ColorSet> lists;
    lists.reserve(colors.size());
    for (ColorId c : colors) {
        if (c < 0 || c >= r) {
            fail(ErrorKind::InvalidColor, "color " + std::to_string(c + 1) + " outside [r]");
        }
        lists.push_back(ColorSet{1} << c);
    }
    return Template(g, r, std::move(lists));
}

bool is_subtemplate(const Template& a, const Template& b) {
    if (!(a.host() == b.host()) || a.colors() != b.colors()) {
        fail(ErrorKind::IncompatibleTemplates, "templates differ in host graph or color count");
    }
    for (EdgeId e = 0; e < a.lists().size(); ++e) {
        if (a.list(e) & ~b.list(e)) return false;
    }
    return true;
}

Template lift_template(const Template& t, int threshold) {
    std::vector<ColorSet> lists = t.lists();
    for (auto& list : lists) {
        if (popcount(list) >= threshold) list = all_colors(t.colors());
    }
    return Template(t.host(), t.colors(), std::move(lists));
}

namespace {

void require_state(const Template& t, const Graph& state) {
    if (!state.is_spanning_subgraph_of(t.host())) {
        fail(ErrorKind::InvalidArgument, "state graph is not a spanning subgraph of the host");
    }
}

}  // namespace

Count list_product(const Template& t, const Graph& state, int v) {
    require_state(t, state);
    Count product = 1;
    for (VertexSet rest = state.neighbors(v); rest; rest &= rest - 1) {
        const int u = std::countr_zero(rest);
        product *= t.list_size(t.host().require_edge(u, v));
    }
    return product;
}

Count list_product(const Template& t, int v) { return list_product(t, t.host(), v); }

VertexSet r_neighborhood(const Template& t, const Graph& state, int v) {
    require_state(t, state);
    VertexSet full = 0;
    for (VertexSet rest = state.neighbors(v); rest; rest &= rest - 1) {
        const int u = std::countr_zero(rest);
        if (t.is_full(t.host().require_edge(u, v))) full |= vertex_bit(u);
    }
    return full;
}

VertexSet r_neighborhood(const Template& t, int v) { return r_neighborhood(t, t.host(), v); }

std::array<EdgeId, 6> k4_edges(const Graph& g, VertexSet quad) {
    std::array<int, 4> vs{};
    int i = 0;
    for (VertexSet rest = quad; rest; rest &= rest - 1) vs[static_cast<std::size_t>(i++)] = std::countr_zero(rest);
    if (i != 4) fail(ErrorKind::InvalidArgument, "K_4 needs exactly four vertices");
    std::array<EdgeId, 6> edges{};
    std::size_t k = 0;
    for (std::size_t a = 0; a < 4; ++a) {
        for (std::size_t b = a + 1; b < 4; ++b) edges[k++] = g.require_edge(vs[a], vs[b]);
    }
    return edges;
}

std::uint64_t count_injective_selections(const std::array<ColorSet, 6>& lists) {
    // Subset DP over colors: ways[mask] counts injective assignments of the edges in
    // `mask` using the colors seen so far.
    std::array<std::uint64_t, 64> ways{};
    ways[0] = 1;
    ColorSet colors = 0;
    for (ColorSet l : lists) {
        if (l == 0) return 0;
        colors |= l;
    }
    if (popcount(colors) < 6) return 0;
    for (ColorSet rest = colors; rest; rest &= rest - 1) {
        const ColorSet bit = rest & (~rest + 1);
        unsigned holders = 0;
        for (unsigned i = 0; i < 6; ++i) {
            if (lists[i] & bit) holders |= 1u << i;
        }
        for (int mask = 63; mask >= 0; --mask) {
            const std::uint64_t w = ways[static_cast<std::size_t>(mask)];
            if (w == 0) continue;
            for (unsigned free = holders & ~static_cast<unsigned>(mask); free; free &= free - 1) {
                ways[static_cast<std::size_t>(mask) | (free & (~free + 1))] += w;
            }
        }
    }
    return ways[63];
}

namespace {

std::uint64_t copies_on(const Template& t, VertexSet quad, CopyReading reading) {
    const auto edges = k4_edges(t.host(), quad);
    std::array<ColorSet, 6> lists{};
    for (std::size_t i = 0; i < 6; ++i) lists[i] = t.list(edges[i]);
    const std::uint64_t ways = count_injective_selections(lists);
    if (reading == CopyReading::Subgraphs) return ways > 0 ? 1 : 0;
    return ways;
}

}  // namespace

Count count_rainbow_copies(const Template& t, CopyReading reading) {
    Count total = 0;
    if (t.colors() < 6) return total;
    std::uint64_t partial = 0;
    for (VertexSet quad : enumerate_cliques(t.host(), 4)) {
        partial += copies_on(t, quad, reading);
        if (partial > (std::uint64_t{1} << 62)) {
            total += partial;
            partial = 0;
        }
    }
    return total + partial;
}

Count count_rainbow_copies_through_triangle(const Template& t, VertexSet tri, const Graph& sub,
                                            CopyReading reading) {
    if (!sub.is_spanning_subgraph_of(t.host())) {
        fail(ErrorKind::InvalidArgument, "restriction is not a subgraph of the host");
    }
    if (popcount(tri) != 3 || (tri & ~sub.vertices())) {
        fail(ErrorKind::InvalidTriangle, "triangle needs three vertices of the graph");
    }
    VertexSet common = sub.vertices() & ~tri;
    for (VertexSet rest = tri; rest; rest &= rest - 1) {
        const int v = std::countr_zero(rest);
        if ((sub.neighbors(v) & tri) != (tri & ~vertex_bit(v))) {
            fail(ErrorKind::InvalidTriangle, "vertices do not span a triangle");
        }
        common &= sub.neighbors(v);
    }
    Count total = 0;
    for (VertexSet rest = common; rest; rest &= rest - 1) {
        total += copies_on(t, tri | (rest & (~rest + 1)), reading);
    }
    return total;
}

void for_each_rainbow_copy(const Template& t,
                           const std::function<void(const RainbowCopy&)>& visit) {
    if (t.colors() < 6) return;
    for (VertexSet quad : enumerate_cliques(t.host(), 4)) {
        const auto edges = k4_edges(t.host(), quad);
        // Smallest lists first so dead branches are cut early.
        std::array<std::size_t, 6> order{};
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return t.list_size(edges[a]) < t.list_size(edges[b]);
        });
        RainbowCopy copy{edges, {}};
        auto place = [&](auto&& self, std::size_t depth, ColorSet used) -> void {
            if (depth == 6) {
                visit(copy);
                return;
            }
            const std::size_t slot = order[depth];
            for (ColorSet rest = t.list(edges[slot]) & ~used; rest; rest &= rest - 1) {
                const int c = std::countr_zero(rest);
                copy.colors[slot] = c;
                self(self, depth + 1, used | (ColorSet{1} << c));
            }
        };
        place(place, 0, 0);
    }
}

ListSizeHistogram list_size_histogram(const Template& t) {
    ListSizeHistogram h;
    h.counts.assign(static_cast<std::size_t>(t.colors()) + 1, 0);
    for (EdgeId e = 0; e < t.lists().size(); ++e) {
        ++h.counts[static_cast<std::size_t>(t.list_size(e))];
    }
    for (int i = 2; i <= 5 && i <= t.colors(); ++i) h.small_lists += h.counts[static_cast<std::size_t>(i)];
    return h;
}

}  // namespace rtl
