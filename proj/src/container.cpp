#include "rtl/container.hpp"

#include "rtl/error.hpp"

#include <algorithm>
#include <cmath>

namespace rtl {

namespace {

constexpr unsigned kPairShift = 17;  // vertex ids stay below 64 * 2016 < 2^17

int binomial_small(int n, int k) {
    if (k < 0 || k > n) return 0;
    int result = 1;
    for (int i = 0; i < k; ++i) result = result * (n - i) / (i + 1);
    return result;
}

}  // namespace

MaterializedHypergraph materialize_rainbow_hypergraph(const Template& t, std::uint64_t cap) {
    const Count total = count_rainbow_copies(t);
    if (total > cap) {
        fail(ErrorKind::CapExceeded, "materialization refused: " + to_decimal(total) +
                                         " rainbow copies exceed cap " + std::to_string(cap));
    }
    MaterializedHypergraph h;
    h.r = t.colors();
    h.vertex_count = t.host().size() * static_cast<std::size_t>(t.colors());
    h.edges.reserve(total.convert_to<std::size_t>());
    for_each_rainbow_copy(t, [&](const RainbowCopy& copy) {
        std::array<std::uint32_t, kUniformity> ids{};
        for (std::size_t i = 0; i < 6; ++i) {
            ids[i] = MaterializedHypergraph::vertex_id({copy.edges[i], copy.colors[i]}, h.r);
        }
        std::sort(ids.begin(), ids.end());
        h.edges.push_back(ids);
    });
    return h;
}

std::array<Count, kUniformity + 1> max_codegrees(const MaterializedHypergraph& h) {
    std::array<Count, kUniformity + 1> result{};
    result[0] = h.edges.size();
    const std::size_t n = h.vertex_count;
    if (h.edges.empty()) return result;

    std::vector<std::size_t> offsets(n + 1, 0);
    for (const auto& e : h.edges) {
        for (auto v : e) ++offsets[v + 1];
    }
    for (std::size_t v = 0; v < n; ++v) offsets[v + 1] += offsets[v];
    std::vector<std::uint32_t> incident(offsets[n]);
    {
        std::vector<std::size_t> fill(offsets.begin(), offsets.end() - 1);
        for (std::size_t i = 0; i < h.edges.size(); ++i) {
            for (auto v : h.edges[i]) incident[fill[v]++] = static_cast<std::uint32_t>(i);
        }
    }
    std::uint64_t max_degree = 0;
    for (std::size_t v = 0; v < n; ++v) max_degree = std::max<std::uint64_t>(max_degree, offsets[v + 1] - offsets[v]);
    result[1] = max_degree;

    // Every j-subset S of a hyperedge is counted once, at its least vertex v: the
    // remaining j-1 members are drawn from the hyperedge's vertices above v.
    for (int j = 2; j <= kUniformity; ++j) {
        const int rest = j - 1;
        double dense_size = std::pow(static_cast<double>(n), rest);
        const bool dense = dense_size <= static_cast<double>(1u << 25);
        std::vector<std::uint32_t> counters(dense ? static_cast<std::size_t>(dense_size) : 0, 0);
        std::vector<std::size_t> touched;
        std::vector<unsigned __int128> keys;
        std::uint64_t best = 0;
        for (std::size_t v = 0; v < n; ++v) {
            touched.clear();
            keys.clear();
            for (std::size_t k = offsets[v]; k < offsets[v + 1]; ++k) {
                const auto& e = h.edges[incident[k]];
                const auto pos = static_cast<std::size_t>(std::find(e.begin(), e.end(), v) - e.begin());
                const int above = kUniformity - 1 - static_cast<int>(pos);
                if (above < rest) continue;
                for (unsigned mask = 0; mask < (1u << above); ++mask) {
                    if (std::popcount(mask) != rest) continue;
                    unsigned __int128 key = 0;
                    std::size_t index = 0;
                    for (int b = 0; b < above; ++b) {
                        if (!((mask >> b) & 1u)) continue;
                        const std::uint32_t w = e[pos + 1 + static_cast<std::size_t>(b)];
                        key = (key << kPairShift) | w;
                        index = index * n + w;
                    }
                    if (dense) {
                        if (counters[index]++ == 0) touched.push_back(index);
                    } else {
                        keys.push_back(key);
                    }
                }
            }
            if (dense) {
                for (std::size_t index : touched) {
                    best = std::max<std::uint64_t>(best, counters[index]);
                    counters[index] = 0;
                }
            } else {
                std::sort(keys.begin(), keys.end());
                for (std::size_t a = 0; a < keys.size();) {
                    std::size_t b = a;
                    while (b < keys.size() && keys[b] == keys[a]) ++b;
                    best = std::max<std::uint64_t>(best, b - a);
                    a = b;
                }
            }
        }
        result[static_cast<std::size_t>(j)] = best;
    }
    return result;
}

std::vector<std::uint64_t> pair_codegree_matrix(const MaterializedHypergraph& h) {
    const std::size_t n = h.vertex_count;
    if (n > 4096) fail(ErrorKind::CapExceeded, "pair co-degree matrix limited to 4096 vertices");
    std::vector<std::uint64_t> m(n * n, 0);
    for (const auto& e : h.edges) {
        for (std::size_t a = 0; a < kUniformity; ++a) {
            for (std::size_t b = 0; b < kUniformity; ++b) ++m[e[a] * n + e[b]];
        }
    }
    return m;
}

namespace {

// Closed-form maxima for the complete template on `host`: a j-set spanning a triangle
// extends through every common neighbor; anything spanning four vertices lies in at
// most one K_4.
std::array<Count, kUniformity + 1> structural_max_codegrees(const Count& max_triangle_extensions,
                                                            bool has_k4, int r) {
    std::array<Count, kUniformity + 1> d{};
    if (r < kUniformity || !has_k4) return d;
    d[2] = max_triangle_extensions * falling_factorial(r - 2, 4);
    d[3] = max_triangle_extensions * falling_factorial(r - 3, 3);
    d[4] = falling_factorial(r - 4, 2);
    d[5] = r - 5;
    d[6] = 1;
    return d;
}

Rational average_degree(const Count& edges, const Count& vertices) {
    if (vertices == 0) return 0;
    return make_rational(edges * kUniformity, vertices);
}

}  // namespace

RainbowHypergraphStats complete_graph_stats(const Count& n, int r) {
    if (r < 1) fail(ErrorKind::InvalidArgument, "need r >= 1");
    RainbowHypergraphStats s;
    s.structural = true;
    s.vertex_count = binomial(n, 2) * r;
    s.edge_count = falling_factorial(r, 6) * binomial(n, 4);
    s.average_degree = average_degree(s.edge_count, s.vertex_count);
    s.max_codegrees = structural_max_codegrees(n >= 4 ? Count(n - 3) : Count(0), n >= 4, r);
    return s;
}

RainbowHypergraphStats build_rainbow_hypergraph(const Template& t,
                                                const HypergraphOptions& options) {
    RainbowHypergraphStats s;
    s.vertex_count = Count(t.host().size()) * t.colors();
    if (t.is_complete() && !options.materialize) {
        const Graph& g = t.host();
        const auto k4s = count_cliques(g, 4);
        std::uint64_t best = 0;
        for (VertexSet tri : enumerate_cliques(g, 3)) {
            best = std::max(best, count_cliques_containing(g, tri, 4));
        }
        s.structural = true;
        s.edge_count = falling_factorial(t.colors(), 6) * k4s;
        s.max_codegrees = structural_max_codegrees(Count(best), k4s > 0, t.colors());
    } else {
        const auto h = materialize_rainbow_hypergraph(t, options.cap);
        s.edge_count = h.edges.size();
        s.max_codegrees = max_codegrees(h);
        s.max_codegrees[0] = 0;
        s.max_codegrees[1] = 0;
    }
    s.average_degree = average_degree(s.edge_count, s.vertex_count);
    return s;
}

namespace {

struct Spanned {
    bool degenerate = false;  // repeated edge or color: no hyperedge contains S
    VertexSet vertices = 0;
    ColorSet colors = 0;
};

Spanned span_of(const Graph& host, int r, std::span<const HyperVertex> s) {
    Spanned out;
    std::vector<EdgeId> seen;
    for (const HyperVertex& p : s) {
        if (p.edge >= host.size()) fail(ErrorKind::InvalidArgument, "edge id out of range");
        if (p.color < 0 || p.color >= r) fail(ErrorKind::InvalidColor, "color outside [r]");
        const ColorSet bit = ColorSet{1} << p.color;
        if ((out.colors & bit) || std::find(seen.begin(), seen.end(), p.edge) != seen.end()) {
            out.degenerate = true;
        }
        out.colors |= bit;
        seen.push_back(p.edge);
        out.vertices |= vertex_bit(host.edge(p.edge).u) | vertex_bit(host.edge(p.edge).v);
    }
    if (popcount(out.vertices) > 4) out.degenerate = true;
    return out;
}

void check_set_size(std::size_t size) {
    if (size < 1 || size > kUniformity) {
        fail(ErrorKind::InvalidArgument, "co-degree sets have 1 to 6 elements");
    }
}

// S is a set: repeated entries collapse.
std::vector<HyperVertex> as_set(std::span<const HyperVertex> s) {
    std::vector<HyperVertex> out(s.begin(), s.end());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace

Count codegree(const Template& t, std::span<const HyperVertex> input) {
    check_set_size(input.size());
    const auto s = as_set(input);
    const Graph& g = t.host();
    const Spanned sp = span_of(g, t.colors(), s);
    if (sp.degenerate) return 0;
    for (const HyperVertex& p : s) {
        if (!(t.list(p.edge) & (ColorSet{1} << p.color))) return 0;
    }
    Count total = 0;
    for (VertexSet quad : enumerate_cliques(g, 4)) {
        if ((quad & sp.vertices) != sp.vertices) continue;
        const auto edges = k4_edges(g, quad);
        std::array<ColorSet, 6> lists{};
        for (std::size_t i = 0; i < 6; ++i) {
            lists[i] = t.list(edges[i]) & ~sp.colors;
            for (const HyperVertex& p : s) {
                if (p.edge == edges[i]) lists[i] = ColorSet{1} << p.color;
            }
        }
        total += count_injective_selections(lists);
    }
    return total;
}

Count structural_codegree(const Graph& host, int r, std::span<const HyperVertex> input) {
    check_set_size(input.size());
    const auto s = as_set(input);
    const Spanned sp = span_of(host, r, s);
    if (sp.degenerate || r < kUniformity) return 0;
    const auto j = static_cast<unsigned>(s.size());
    return Count(count_cliques_containing(host, sp.vertices, 4)) *
           falling_factorial(r - static_cast<int>(j), kUniformity - j);
}

Count max_codegree(const Template& t, int j, const HypergraphOptions& options) {
    if (j < 2 || j > kUniformity) fail(ErrorKind::InvalidArgument, "j must be in 2..6");
    return build_rainbow_hypergraph(t, options).delta(j);
}

namespace {

Rational weight(int j, CodegreeWeights weights) {
    const int exponent = weights == CodegreeWeights::Definition ? binomial_small(j - 1, 2) : j - 2;
    return make_rational(1, Count(1) << exponent);
}

Rational leading_constant() {
    return Rational(Count(1) << (binomial_small(kUniformity, 2) - 1));
}

}  // namespace

Laurent delta_tau_series(const RainbowHypergraphStats& stats, const Rational& tau_scale,
                         CodegreeWeights weights) {
    if (stats.average_degree <= 0) {
        fail(ErrorKind::UndefinedAverageDegree, "average degree is zero; Delta(H, tau) undefined");
    }
    if (tau_scale <= 0) fail(ErrorKind::InvalidArgument, "tau must be positive");
    Laurent series;
    for (int j = 2; j <= kUniformity; ++j) {
        const Rational term = leading_constant() * weight(j, weights) * Rational(stats.delta(j)) /
                              (stats.average_degree * rpow(tau_scale, j - 1));
        series += Laurent::monomial(term, -(j - 1));
    }
    return series;
}

Rational delta_tau(const RainbowHypergraphStats& stats, const Rational& tau,
                   CodegreeWeights weights) {
    return delta_tau_series(stats, tau, weights).evaluate(Rational(1));
}

ContainerConstants container_constants(const Count& n, int r) {
    if (n < 1) fail(ErrorKind::InvalidArgument, "need n >= 1");
    if (r < 3) fail(ErrorKind::InvalidArgument, "need r >= 3");
    const Count sq = 12 * 720;  // 12 * 6!, so x = sqrt(8640) * n^(-1/3)
    ContainerConstants c;
    c.n = n;
    c.r = r;
    c.x = Radical{make_rational(sq * sq * sq, n * n), 6};
    c.tau_scale = Rational(512);
    const Count rr = Count(r - 1) * (r - 2);
    c.epsilon = Laurent::monomial(make_rational(sq, n * rr), -2);
    c.tau_pow6 = rpow(c.tau_scale, 6) * c.x.radicand;
    if (auto cube = exact_root(n, 3)) c.epsilon_exact = make_rational(1, *cube * rr);
    const Count f = factorial(kUniformity);
    c.tau_threshold = make_rational(1, 200 * kUniformity * f * f);
    c.codegree_divisor = Rational(12 * f);
    c.c_bound = 1000 * kUniformity * f * f * f;
    return c;
}

namespace {

double approx(const Interval& i) {
    return ((i.lo + i.hi) / 2).convert_to<double>();
}

}  // namespace

ContainerReport container_hypothesis_check(const Count& n, int r, CodegreeWeights weights) {
    ContainerReport report;
    report.constants = container_constants(n, r);
    const ContainerConstants& c = report.constants;
    report.stats = complete_graph_stats(n, r);
    report.vacuous = r < kUniformity;

    // eps^3 = 1/(n ((r-1)(r-2))^3) < 1/8
    const Count rr = Count(r - 1) * (r - 2);
    report.epsilon_ok = n * rr * rr * rr > 8;
    // tau^6 < threshold^6
    report.tau_ok = c.tau_pow6 < rpow(c.tau_threshold, 6);
    report.tau_enclosure = Laurent::monomial(c.tau_scale, 1).evaluate(c.x.enclose(64));
    report.epsilon_enclosure = c.epsilon.evaluate(c.x.enclose(64));

    if (!report.vacuous && report.stats.average_degree > 0) {
        const Laurent delta = delta_tau_series(report.stats, c.tau_scale, weights);
        Laurent bound = c.epsilon;
        bound *= 1 / c.codegree_divisor;
        const auto sign = certified_sign(delta - bound, c.x);
        report.delta_undetermined = !sign.has_value();
        report.delta_ok = sign.has_value() && *sign <= 0;
        report.delta_enclosure = delta.evaluate(c.x.enclose(64));
        report.delta_bound = bound.evaluate(c.x.enclose(64));
    }

    const double tau = approx(report.tau_enclosure);
    const double eps = approx(report.epsilon_enclosure);
    if (tau > 0 && eps > 0) {
        report.log_container_bound = c.c_bound.convert_to<double>() *
                                     report.stats.vertex_count.convert_to<double>() * tau *
                                     std::log(1 / eps) * std::log(1 / tau);
    }
    return report;
}

Count min_n_for_container(int r, CodegreeWeights weights) {
    if (r < kUniformity) fail(ErrorKind::InvalidArgument, "container threshold needs r >= 6");
    auto passes = [&](const Count& n) { return container_hypothesis_check(n, r, weights).passes(); };
    Count hi = 4;
    while (!passes(hi)) {
        hi *= 2;
        if (msb(hi) > 4096) fail(ErrorKind::Infeasible, "no passing n below 2^4096");
    }
    Count lo = hi / 2;  // fails, or lo < 4 where no K_4 exists
    if (hi == 4) lo = 0;
    while (hi - lo > 1) {
        const Count mid = (lo + hi) / 2;
        if (mid >= 1 && passes(mid)) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return hi;
}

}  // namespace rtl
