#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "rtl/container.hpp"
#include "rtl/error.hpp"

#include <random>

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

HypergraphOptions materialized() {
    HypergraphOptions o;
    o.materialize = true;
    return o;
}

}  // namespace

TEST_CASE("materialized co-degrees match the map-based oracle") {
    std::mt19937_64 rng(51);
    for (int trial = 0; trial < 25; ++trial) {
        const int n = 4 + static_cast<int>(rng() % 2);
        const int r = 6 + static_cast<int>(rng() % 2);
        const Graph g = oracle::random_graph(rng, n, 0.85);
        const Template t = oracle::random_template(rng, g, r, 0.8);
        const auto copies = oracle::rainbow_copies(t);
        const auto expected = oracle::max_codegrees(copies);
        const auto h = materialize_rainbow_hypergraph(t);
        CHECK(h.edges.size() == copies.size());
        const auto got = max_codegrees(h);
        CHECK(got[0] == copies.size());
        for (std::size_t j = 1; j <= 6; ++j) CHECK(got[j] == expected[j]);
    }
}

TEST_CASE("structural and materialized statistics agree on complete templates") {
    for (int n : {4, 5, 6}) {
        for (int r : {6, 7}) {
            const Template t = complete_template(Graph::complete(n), r);
            const auto s = build_rainbow_hypergraph(t);
            const auto m = build_rainbow_hypergraph(t, materialized());
            CHECK(s.structural);
            CHECK_FALSE(m.structural);
            CHECK(s.edge_count == m.edge_count);
            CHECK(s.average_degree == m.average_degree);
            for (int j = 2; j <= 6; ++j) CHECK(s.delta(j) == m.delta(j));
            const auto c = complete_graph_stats(n, r);
            CHECK(c.edge_count == s.edge_count);
            for (int j = 2; j <= 6; ++j) CHECK(c.delta(j) == s.delta(j));
        }
    }
    // Non-complete host with a complete template: closed forms still apply.
    const Graph g = Graph::complete(6).filter_edges([](EdgeId e) { return e != 0 && e != 14; });
    const Template t = complete_template(g, 6);
    const auto s = build_rainbow_hypergraph(t);
    const auto m = build_rainbow_hypergraph(t, materialized());
    for (int j = 2; j <= 6; ++j) CHECK(s.delta(j) == m.delta(j));
}

TEST_CASE("pair co-degrees in the three configurations") {
    for (int n : {4, 5, 6}) {
        for (int r : {6, 7, 12}) {
            const Graph kn = Graph::complete(n);
            const Template t = complete_template(kn, r);
            const Count tail = falling_factorial(r - 2, 4);
            const HyperVertex a{kn.require_edge(0, 1), 0};
            const HyperVertex same_edge{kn.require_edge(0, 1), 1};
            const HyperVertex shared{kn.require_edge(0, 2), 1};
            const HyperVertex disjoint{kn.require_edge(2, 3), 1};
            const std::array<HyperVertex, 2> s0{a, same_edge}, s1{a, disjoint}, s2{a, shared};
            CHECK(structural_codegree(kn, r, s0) == 0);
            CHECK(structural_codegree(kn, r, s1) == tail);
            CHECK(structural_codegree(kn, r, s2) == Count(n - 3) * tail);
            if (n <= 5) {
                CHECK(codegree(t, s0) == 0);
                CHECK(codegree(t, s1) == tail);
                CHECK(codegree(t, s2) == Count(n - 3) * tail);
            }
            // repeated color
            const std::array<HyperVertex, 2> s3{a, HyperVertex{kn.require_edge(2, 3), 0}};
            CHECK(structural_codegree(kn, r, s3) == 0);
        }
    }
    CHECK(complete_graph_stats(6, 12).delta(2) == 15120);
    CHECK(complete_graph_stats(4, 6).delta(2) == 24);
}

TEST_CASE("direct co-degree matches the oracle on random templates") {
    std::mt19937_64 rng(53);
    for (int trial = 0; trial < 20; ++trial) {
        const Graph g = oracle::random_graph(rng, 5, 0.9);
        const Template t = oracle::random_template(rng, g, 7, 0.7);
        const auto copies = oracle::rainbow_copies(t);
        if (copies.empty() || g.size() < 2) continue;
        for (int probe = 0; probe < 30; ++probe) {
            const std::size_t j = 1 + rng() % 4;
            std::vector<HyperVertex> s;
            std::vector<std::pair<std::size_t, int>> key;
            // half the probes come from an actual copy so that hits are common
            const auto& base = copies[rng() % copies.size()];
            for (std::size_t i = 0; i < j; ++i) {
                std::pair<std::size_t, int> p = (probe % 2) ? base[i]
                                                            : std::pair<std::size_t, int>{rng() % g.size(), static_cast<int>(rng() % 7)};
                s.push_back({p.first, p.second});
                key.push_back(p);
            }
            std::uint64_t expected = 0;
            for (auto& h : copies) {
                bool all = true;
                for (auto& p : key) all = all && std::find(h.begin(), h.end(), p) != h.end();
                expected += all;
            }
            CHECK(codegree(t, s) == expected);
        }
    }
    const Template t = complete_template(Graph::complete(4), 6);
    CHECK(kind_of([&] { codegree(t, std::vector<HyperVertex>{}); }) == ErrorKind::InvalidArgument);
    const std::array<HyperVertex, 1> bad{HyperVertex{0, 6}};
    CHECK(kind_of([&] { codegree(t, bad); }) == ErrorKind::InvalidColor);
}

TEST_CASE("hyperedge and degree identities") {
    for (int n : {4, 5, 6, 9, 30}) {
        for (int r : {6, 7, 12}) {
            const auto s = complete_graph_stats(n, r);
            CHECK(s.edge_count == falling_factorial(r, 6) * binomial(Count(n), 4));
            CHECK(s.average_degree * Rational(s.vertex_count) == Rational(6 * s.edge_count));
            CHECK(s.vertex_count == Count(r) * binomial(Count(n), 2));
            CHECK(s.average_degree == Rational(binomial(Count(n - 2), 2) * falling_factorial(r - 1, 5)));
        }
    }
}

TEST_CASE("materialization cap and pair matrix") {
    const Template t = complete_template(Graph::complete(4), 6);
    CHECK(kind_of([&] { materialize_rainbow_hypergraph(t, 100); }) == ErrorKind::CapExceeded);
    const auto h = materialize_rainbow_hypergraph(t);
    const auto m = pair_codegree_matrix(h);
    const auto d = max_codegrees(h);
    std::uint64_t best_pair = 0, best_diag = 0;
    for (std::size_t a = 0; a < h.vertex_count; ++a) {
        best_diag = std::max(best_diag, m[a * h.vertex_count + a]);
        for (std::size_t b = 0; b < h.vertex_count; ++b) {
            CHECK(m[a * h.vertex_count + b] == m[b * h.vertex_count + a]);
            if (a != b) best_pair = std::max(best_pair, m[a * h.vertex_count + b]);
        }
    }
    CHECK(d[1] == best_diag);
    CHECK(d[2] == best_pair);
}

TEST_CASE("weighted co-degree sum") {
    const auto s = complete_graph_stats(10, 12);
    const Rational tau = make_rational(1, 100);
    Rational by_hand_def = 0, by_hand_exp = 0;
    const Rational def_w[] = {1, make_rational(1, 2), make_rational(1, 8), make_rational(1, 64), make_rational(1, 1024)};
    const Rational exp_w[] = {1, make_rational(1, 2), make_rational(1, 4), make_rational(1, 8), make_rational(1, 16)};
    for (int j = 2; j <= 6; ++j) {
        const Rational term = Rational(s.delta(j)) / (s.average_degree * rpow(tau, j - 1));
        by_hand_def += def_w[j - 2] * term;
        by_hand_exp += exp_w[j - 2] * term;
    }
    CHECK(delta_tau(s, tau) == 16384 * by_hand_def);
    CHECK(delta_tau(s, tau, CodegreeWeights::Expanded) == 16384 * by_hand_exp);
    const Laurent series = delta_tau_series(s, Rational(512));
    CHECK(series.evaluate(make_rational(3, 7)) == delta_tau(s, 512 * make_rational(3, 7)));
    CHECK(kind_of([] { delta_tau(complete_graph_stats(10, 5), Rational(1, 2)); }) ==
          ErrorKind::UndefinedAverageDegree);
}

TEST_CASE("container constants") {
    const auto c = container_constants(1000, 12);
    CHECK(c.x.index == 6);
    CHECK(c.x.radicand == make_rational(ipow(8640, 3), 1000000));
    REQUIRE(c.epsilon_exact.has_value());
    CHECK(*c.epsilon_exact == make_rational(1, 10 * 110));
    // The Laurent form of eps evaluated at the exact x agrees with the closed form.
    const Interval x = c.x.enclose(200);
    const Interval eps = c.epsilon.evaluate(x);
    CHECK(eps.lo <= *c.epsilon_exact);
    CHECK(eps.hi >= *c.epsilon_exact);
    CHECK(c.tau_threshold == make_rational(1, 1200 * 720 * 720));
    CHECK(c.codegree_divisor == 8640);
    CHECK(c.tau_pow6 == rpow(Rational(512), 6) * c.x.radicand);
    CHECK_FALSE(container_constants(1001, 12).epsilon_exact.has_value());
}

TEST_CASE("hypothesis check and threshold") {
    const auto small = container_hypothesis_check(1000, 12);
    CHECK(small.epsilon_ok);
    CHECK_FALSE(small.tau_ok);
    CHECK_FALSE(small.passes());
    CHECK(container_hypothesis_check(1000, 5).vacuous);
    const Count n = min_n_for_container(12);
    CHECK(container_hypothesis_check(n, 12).passes());
    CHECK_FALSE(container_hypothesis_check(n - 1, 12).passes());
    // The tau condition is the binding one: n^2 > 8640^3 * 512^6 * (1200 * 720^2)^6.
    const Count bound = ipow(8640, 3) * ipow(512, 6) * ipow(Count(1200) * 720 * 720, 6);
    CHECK(n * n > bound);
    CHECK((n - 1) * (n - 1) <= bound);
    CHECK(min_n_for_container(12, CodegreeWeights::Expanded) == n);
    CHECK(kind_of([] { min_n_for_container(5); }) == ErrorKind::InvalidArgument);
}
