#include "rtl/graph6.hpp"

#include "rtl/error.hpp"

#include <algorithm>
#include <array>
#include <numeric>

namespace rtl {

namespace {

constexpr char kBias = 63;
constexpr std::string_view kHeader = ">>graph6<<";

bool valid_byte(char c) { return c >= 63 && c <= 126; }

[[noreturn]] void parse_fail(const std::string& what, std::size_t offset) {
    throw Error(ErrorKind::ParseError, "graph6: " + what + " at byte " + std::to_string(offset),
                offset);
}

}  // namespace

std::string write_graph6(const Graph& g) {
    const int n = g.order();
    std::string out;
    if (n <= 62) {
        out.push_back(static_cast<char>(n + kBias));
    } else {
        out.push_back(126);
        out.push_back(static_cast<char>(((n >> 12) & 63) + kBias));
        out.push_back(static_cast<char>(((n >> 6) & 63) + kBias));
        out.push_back(static_cast<char>((n & 63) + kBias));
    }
    int bits = 0;
    int value = 0;
    for (int j = 1; j < n; ++j) {
        for (int i = 0; i < j; ++i) {
            value = (value << 1) | (g.adjacent(i, j) ? 1 : 0);
            if (++bits == 6) {
                out.push_back(static_cast<char>(value + kBias));
                bits = value = 0;
            }
        }
    }
    if (bits > 0) out.push_back(static_cast<char>((value << (6 - bits)) + kBias));
    return out;
}

Graph parse_graph6(std::string_view text) {
    std::size_t pos = 0;
    if (text.substr(0, kHeader.size()) == kHeader) pos = kHeader.size();
    if (pos >= text.size()) parse_fail("missing vertex count", pos);

    auto next = [&]() -> int {
        if (pos >= text.size()) parse_fail("truncated input", pos);
        const char c = text[pos];
        if (!valid_byte(c)) parse_fail("byte outside 63..126", pos);
        ++pos;
        return c - kBias;
    };

    long n = next();
    if (n == 63) {
        if (pos < text.size() && text[pos] == 126) {
            ++pos;
            n = 0;
            for (int i = 0; i < 6; ++i) n = (n << 6) | next();
        } else {
            n = 0;
            for (int i = 0; i < 3; ++i) n = (n << 6) | next();
        }
    }
    if (n > kMaxVertices) {
        throw Error(ErrorKind::UnsupportedSize,
                    "graph6 input has " + std::to_string(n) + " vertices; limit is 64");
    }

    const int order = static_cast<int>(n);
    std::vector<VertexSet> rows(static_cast<std::size_t>(order), 0);
    int bit = 0;
    int value = 0;
    for (int j = 1; j < order; ++j) {
        for (int i = 0; i < j; ++i) {
            if (bit == 0) value = next();
            if ((value >> (5 - bit)) & 1) {
                rows[static_cast<std::size_t>(i)] |= vertex_bit(j);
                rows[static_cast<std::size_t>(j)] |= vertex_bit(i);
            }
            bit = (bit + 1) % 6;
        }
    }
    if (pos != text.size()) parse_fail("trailing bytes", pos);
    return Graph::from_adjacency(std::move(rows));
}

std::vector<Graph> read_graph6_stream(std::istream& in) {
    std::vector<Graph> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
        if (line.empty()) continue;
        try {
            out.push_back(parse_graph6(line));
        } catch (const Error& e) {
            throw Error(e.kind(), "line " + std::to_string(line_no) + ": " + e.what(),
                        e.offset());
        }
    }
    return out;
}

namespace {

std::size_t complete_edge_index(int n, int u, int v) {
    return static_cast<std::size_t>(u * (2 * n - u - 1) / 2 + (v - u - 1));
}

// Byte lookup tables: for a permutation p, table[chunk][byte] is the image mask of the
// edges encoded by `byte` in bit positions [8*chunk, 8*chunk+8).
struct PermutationTables {
    std::vector<std::array<std::array<std::uint16_t, 256>, 2>> tables;
};

PermutationTables build_tables(int n) {
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    const int m = n * (n - 1) / 2;
    std::vector<std::pair<int, int>> pairs;
    for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) pairs.emplace_back(u, v);
    }
    PermutationTables result;
    do {
        std::vector<int> image(static_cast<std::size_t>(m));
        for (int e = 0; e < m; ++e) {
            int a = perm[static_cast<std::size_t>(pairs[static_cast<std::size_t>(e)].first)];
            int b = perm[static_cast<std::size_t>(pairs[static_cast<std::size_t>(e)].second)];
            if (a > b) std::swap(a, b);
            image[static_cast<std::size_t>(e)] = static_cast<int>(complete_edge_index(n, a, b));
        }
        std::array<std::array<std::uint16_t, 256>, 2> t{};
        for (int chunk = 0; chunk < 2; ++chunk) {
            for (int byte = 0; byte < 256; ++byte) {
                std::uint16_t mapped = 0;
                for (int b = 0; b < 8; ++b) {
                    const int e = chunk * 8 + b;
                    if (e < m && ((byte >> b) & 1)) {
                        mapped |= static_cast<std::uint16_t>(1u << image[static_cast<std::size_t>(e)]);
                    }
                }
                t[static_cast<std::size_t>(chunk)][static_cast<std::size_t>(byte)] = mapped;
            }
        }
        result.tables.push_back(t);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return result;
}

}  // namespace

std::uint64_t edge_mask(const Graph& g) {
    std::uint64_t mask = 0;
    const int n = g.order();
    if (n * (n - 1) / 2 > 64) fail(ErrorKind::UnsupportedSize, "edge mask needs n <= 11");
    for (const Edge& e : g.edges()) mask |= std::uint64_t{1} << complete_edge_index(n, e.u, e.v);
    return mask;
}

Graph graph_from_edge_mask(int n, std::uint64_t mask) {
    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) {
            if ((mask >> complete_edge_index(n, u, v)) & 1) edges.emplace_back(u, v);
        }
    }
    return Graph::from_edges(n, edges);
}

std::uint64_t canonical_mask(const Graph& g) {
    const int n = g.order();
    if (n > kMaxCanonicalOrder) {
        fail(ErrorKind::UnsupportedSize, "canonical form is limited to 8 vertices");
    }
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    std::uint64_t best = ~std::uint64_t{0};
    do {
        std::uint64_t mask = 0;
        for (const Edge& e : g.edges()) {
            int a = perm[static_cast<std::size_t>(e.u)];
            int b = perm[static_cast<std::size_t>(e.v)];
            if (a > b) std::swap(a, b);
            mask |= std::uint64_t{1} << complete_edge_index(n, a, b);
        }
        best = std::min(best, mask);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return g.order() == 0 ? 0 : best;
}

Graph canonical_form(const Graph& g) { return graph_from_edge_mask(g.order(), canonical_mask(g)); }

void enumerate_graphs(int n, const std::function<void(const Graph&)>& visit) {
    if (n < 0) fail(ErrorKind::InvalidArgument, "negative vertex count");
    if (n > kMaxEnumerationOrder) {
        fail(ErrorKind::UnsupportedSize,
             "internal enumeration stops at 6 vertices; supply a graph6 stream for n = " +
                 std::to_string(n));
    }
    if (n <= 1) {
        visit(Graph(n));
        return;
    }
    const PermutationTables perms = build_tables(n);
    const std::uint32_t limit = std::uint32_t{1} << (n * (n - 1) / 2);
    for (std::uint32_t mask = 0; mask < limit; ++mask) {
        bool canonical = true;
        for (const auto& t : perms.tables) {
            const std::uint32_t image = t[0][mask & 255u] | t[1][(mask >> 8) & 255u];
            if (image < mask) {
                canonical = false;
                break;
            }
        }
        if (canonical) visit(graph_from_edge_mask(n, mask));
    }
}

std::vector<Graph> enumerate_graphs(int n) {
    std::vector<Graph> out;
    enumerate_graphs(n, [&](const Graph& g) { out.push_back(g); });
    return out;
}

}  // namespace rtl
