#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "rtl/error.hpp"
#include "rtl/graph.hpp"
#include "rtl/graph6.hpp"

#include <random>
#include <set>
#include <sstream>

using namespace rtl;

namespace {

ErrorKind kind_of(auto&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("no error raised");
    return ErrorKind::InvalidArgument;
}

}  // namespace

TEST_CASE("edge ids are lexicographic") {
    const Graph k4 = Graph::complete(4);
    REQUIRE(k4.size() == 6);
    CHECK(k4.edge(0) == Edge{0, 1});
    CHECK(k4.edge(2) == Edge{0, 3});
    CHECK(k4.edge(5) == Edge{2, 3});
    CHECK(k4.edge_id(3, 1) == std::optional<EdgeId>(4));
    const Graph c5 = Graph::cycle(5);
    CHECK(c5.size() == 5);
    CHECK_FALSE(c5.edge_id(0, 2).has_value());
    CHECK(kind_of([&] { c5.require_edge(0, 2); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("adjacency validation") {
    CHECK(kind_of([] { Graph::from_adjacency({0b10, 0b00}); }) == ErrorKind::InvalidArgument);
    CHECK(kind_of([] { Graph::from_adjacency({0b01}); }) == ErrorKind::InvalidArgument);
    CHECK(kind_of([] { Graph(65); }) == ErrorKind::UnsupportedSize);
}

TEST_CASE("isolate and filter keep labels") {
    const Graph k5 = Graph::complete(5);
    const Graph g = k5.isolate(vertex_bit(2));
    CHECK(g.order() == 5);
    CHECK(g.degree(2) == 0);
    CHECK(g.size() == 6);
    CHECK(g.is_spanning_subgraph_of(k5));
    CHECK_FALSE(k5.is_spanning_subgraph_of(g));
    const Graph f = k5.filter_edges([](EdgeId e) { return e % 2 == 0; });
    CHECK(f.size() == 5);
}

TEST_CASE("graph6 known strings") {
    CHECK(write_graph6(Graph::complete(4)) == "C~");
    CHECK(write_graph6(Graph::complete(5)) == "D~{");
    CHECK(write_graph6(Graph::complete(6)) == "E~~w");
    CHECK(write_graph6(Graph(5)) == "D??");
    CHECK(parse_graph6(">>graph6<<C~") == Graph::complete(4));
    CHECK(parse_graph6("@") == Graph(1));
}

TEST_CASE("graph6 round trip including long headers") {
    std::mt19937_64 rng(11);
    for (int n : {0, 1, 2, 7, 13, 30, 62, 63, 64}) {
        for (int rep = 0; rep < 5; ++rep) {
            const Graph g = oracle::random_graph(rng, n, 0.4);
            CHECK(parse_graph6(write_graph6(g)) == g);
        }
    }
}

TEST_CASE("graph6 parse errors carry offsets") {
    try {
        parse_graph6("C~ ");
        FAIL("trailing byte accepted");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::ParseError);
        CHECK(e.offset() == std::optional<std::size_t>(2));
    }
    try {
        parse_graph6("D~");
        FAIL("truncated input accepted");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::ParseError);
    }
    CHECK(kind_of([] { parse_graph6(""); }) == ErrorKind::ParseError);
    // 65 vertices: ~ then six-bit groups 0, 1, 1
    CHECK(kind_of([] { parse_graph6(std::string("~?@@") + std::string(347, '?')); }) ==
          ErrorKind::UnsupportedSize);
    std::istringstream stream("C~\n\nC?\nC*\n");
    try {
        read_graph6_stream(stream);
        FAIL("bad line accepted");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::ParseError);
        CHECK(std::string(e.what()).find("line 4") != std::string::npos);
    }
}

TEST_CASE("isomorphism class enumeration matches brute force") {
    const std::vector<std::size_t> known{1, 1, 2, 4, 11, 34, 156};
    for (int n = 0; n <= kMaxEnumerationOrder; ++n) {
        const auto classes = enumerate_graphs(n);
        CHECK(classes.size() == known[static_cast<std::size_t>(n)]);
        if (n <= 5) CHECK(classes.size() == oracle::count_classes(n));
        std::set<std::uint64_t> keys;
        std::uint64_t prev = 0;
        for (std::size_t i = 0; i < classes.size(); ++i) {
            keys.insert(oracle::canonical_key(classes[i]));
            const std::uint64_t mask = canonical_mask(classes[i]);
            if (i) CHECK(mask > prev);
            prev = mask;
        }
        CHECK(keys.size() == classes.size());
    }
    CHECK(kind_of([] { enumerate_graphs(7); }) == ErrorKind::UnsupportedSize);
}

TEST_CASE("canonical form is a relabeling invariant") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 60; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 7);
        const Graph g = oracle::random_graph(rng, n, 0.5);
        std::vector<int> p(static_cast<std::size_t>(n));
        std::iota(p.begin(), p.end(), 0);
        std::shuffle(p.begin(), p.end(), rng);
        std::vector<std::pair<int, int>> es;
        for (const Edge& e : g.edges()) es.emplace_back(p[static_cast<std::size_t>(e.u)], p[static_cast<std::size_t>(e.v)]);
        const Graph h = Graph::from_edges(n, es);
        CHECK(canonical_mask(g) == canonical_mask(h));
        CHECK(canonical_form(g) == canonical_form(h));
        CHECK(canonical_form(g).size() == g.size());
    }
}

TEST_CASE("turan graphs") {
    const Graph t = turan_graph(8, 3);
    CHECK(t.size() == 21);
    CHECK(extremal_number(8, 4) == 21);
    CHECK(extremal_number(5, 4) == 8);
    CHECK(extremal_number(1000, 4) == 333333);
    CHECK(count_cliques(t, 4) == 0);
    const Partition p = turan_partition(8, 3);
    CHECK(internal_edges(t, p) == 0);
    for (int n = 1; n <= 12; ++n)
        for (int k = 2; k <= 6; ++k)
            CHECK(Count(turan_graph(n, k - 1).size()) == extremal_number(static_cast<std::uint64_t>(n), k));
}

TEST_CASE("clique counting matches subset enumeration") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 80; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 10);
        const Graph g = oracle::random_graph(rng, n, 0.6);
        for (int k = 1; k <= 5; ++k) {
            const auto expected = oracle::cliques(g, k);
            CHECK(count_cliques(g, k) == expected.size());
            CHECK(enumerate_cliques(g, k).size() == expected.size());
        }
        for (const auto& tri : oracle::cliques(g, 3)) {
            VertexSet core = 0;
            for (int v : tri) core |= vertex_bit(v);
            std::uint64_t through = 0;
            for (const auto& q : oracle::cliques(g, 4))
                through += std::includes(q.begin(), q.end(), tri.begin(), tri.end());
            CHECK(count_cliques_containing(g, core, 4) == through);
        }
    }
    CHECK(count_cliques(Graph::complete(6), 4) == 15);
}

TEST_CASE("closeness to k-partite") {
    CHECK(closeness_to_kpartite(Graph::complete(6), 3).internal_edges == 3);
    CHECK(closeness_to_kpartite(turan_graph(7, 3), 3).internal_edges == 0);
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 60; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 8);
        const Graph g = oracle::random_graph(rng, n, 0.6);
        for (int k : {2, 3}) {
            const Closeness c = closeness_to_kpartite(g, k);
            CHECK(c.exact);
            CHECK(c.internal_edges == oracle::closeness(g, k));
            CHECK(internal_edges(g, c.partition) == c.internal_edges);
        }
    }
    // Above the exact cap the answer is an upper bound realized by its partition.
    const Graph big = oracle::random_graph(rng, 20, 0.5);
    const Closeness approx = closeness_to_kpartite(big, 3, 10);
    CHECK_FALSE(approx.exact);
    CHECK(internal_edges(big, approx.partition) == approx.internal_edges);
}
