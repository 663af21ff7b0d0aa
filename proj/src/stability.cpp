#include "rtl/stability.hpp"

#include "rtl/error.hpp"

#include <algorithm>
#include <functional>

namespace rtl {

Rational xi_from_delta(const Rational& delta) {
    if (delta <= 0) fail(ErrorKind::InvalidArgument, "delta must be positive");
    return delta / (300 * rpow(euler::upper(), 6));
}

void validate(const CleaningConfig& cfg) {
    if (cfg.r < 2) fail(ErrorKind::InvalidArgument, "cleaning needs r >= 2");
    if (cfg.xi <= 0 || cfg.xi >= 1) fail(ErrorKind::InvalidArgument, "xi must lie in (0, 1)");
    if (cfg.n < 1) fail(ErrorKind::InvalidArgument, "n must be positive");
    auto p = cfg.priority;
    std::sort(p.begin(), p.end());
    if (p != std::array<int, 2>{1, 2}) {
        fail(ErrorKind::InvalidArgument, "priority must order operations 1 and 2");
    }
}

CleaningConfig make_cleaning_config(const Template& t, const Rational& xi) {
    CleaningConfig cfg;
    cfg.r = t.colors();
    cfg.xi = xi;
    cfg.n = t.host().order();
    validate(cfg);
    return cfg;
}

Graph remove_singleton_edges(const Template& t) {
    return t.host().filter_edges([&](EdgeId e) { return t.list_size(e) != 1; });
}

CleaningState initial_state(const Template& t) {
    return {remove_singleton_edges(t), t.host().vertices()};
}

namespace {

bool alive(const CleaningState& s, int v) {
    return v >= 0 && v < s.graph.order() && ((s.alive >> v) & 1u);
}

}  // namespace

std::optional<Count> operation1_guard(const CleaningState& s, const Template& t,
                                      const CleaningConfig& cfg, int v) {
    if (!alive(s, v)) return std::nullopt;
    const Count product = list_product(t, s.graph, v);
    const Rational exponent = (2 - cfg.xi * cfg.xi) * (s.size() - 1) / 3;
    if (!leq_power(product, cfg.r, exponent)) return std::nullopt;
    return product;
}

std::optional<Operation1Witness> operation1_step(const CleaningState& s, const Template& t,
                                                 const CleaningConfig& cfg) {
    for (int v = 0; v < s.graph.order(); ++v) {
        if (auto product = operation1_guard(s, t, cfg, v)) return Operation1Witness{v, *product};
    }
    return std::nullopt;
}

bool is_critical_triangle(const Template& t, const Graph& g, VertexSet tri, const Count& n,
                          CopyReading reading) {
    const Count copies = count_rainbow_copies_through_triangle(t, tri, g, reading);
    return ipow(copies, 6) >= ipow(n, 5);
}

std::optional<Operation2Witness> operation2_guard(const CleaningState& s, const Template& t,
                                                  const CleaningConfig& cfg,
                                                  const std::array<int, 3>& tri) {
    const auto [u, v, w] = tri;
    if (!(u < v && v < w) || !alive(s, u) || !alive(s, v) || !alive(s, w)) return std::nullopt;
    const Graph& g = s.graph;
    if (!g.adjacent(u, v) || !g.adjacent(u, w) || !g.adjacent(v, w)) return std::nullopt;

    const Graph& host = t.host();
    std::array<int, 3> sizes{t.list_size(host.require_edge(u, v)),
                             t.list_size(host.require_edge(u, w)),
                             t.list_size(host.require_edge(v, w))};
    std::sort(sizes.begin(), sizes.end(), std::greater<>());
    if (sizes[2] < 2 || sizes[0] != cfg.r || sizes[1] < 3) return std::nullopt;

    const int joint = popcount(g.neighbors(u) & g.neighbors(v) & g.neighbors(w));
    if (Rational(joint) < 19 * cfg.xi * cfg.xi * (s.size() - 3)) return std::nullopt;

    const VertexSet bits = vertex_bit(u) | vertex_bit(v) | vertex_bit(w);
    const Count copies = count_rainbow_copies_through_triangle(t, bits, g, cfg.reading);
    if (ipow(copies, 6) >= ipow(cfg.n, 5)) return std::nullopt;
    return Operation2Witness{tri, joint, sizes, copies};
}

std::optional<Operation2Witness> operation2_step(const CleaningState& s, const Template& t,
                                                 const CleaningConfig& cfg) {
    const Graph& g = s.graph;
    for (int u = 0; u < g.order(); ++u) {
        for (VertexSet vs = g.neighbors(u) & vertices_above(u); vs; vs &= vs - 1) {
            const int v = std::countr_zero(vs);
            for (VertexSet ws = g.neighbors(u) & g.neighbors(v) & vertices_above(v); ws;
                 ws &= ws - 1) {
                const int w = std::countr_zero(ws);
                if (auto witness = operation2_guard(s, t, cfg, {u, v, w})) return witness;
            }
        }
    }
    return std::nullopt;
}

std::string_view to_string(StopReason reason) {
    return reason == StopReason::SizeFloor ? "size <= xi^2 n" : "no operation applicable";
}

CleaningState apply(const CleaningState& s, const CleaningStep& step) {
    VertexSet removed = 0;
    for (int v : step.removed) removed |= vertex_bit(v);
    return {s.graph.isolate(removed), s.alive & ~removed};
}

namespace {

bool at_floor(const CleaningState& s, const CleaningConfig& cfg) {
    return Rational(s.size()) <= cfg.xi * cfg.xi * Rational(cfg.n);
}

std::optional<CleaningStep> next_step(const CleaningState& s, const Template& t,
                                      const CleaningConfig& cfg) {
    for (int op : cfg.priority) {
        CleaningStep step;
        step.operation = op;
        step.n_before = s.size();
        if (op == 1) {
            step.op1 = operation1_step(s, t, cfg);
            if (!step.op1) continue;
            step.removed = {step.op1->vertex};
        } else {
            step.op2 = operation2_step(s, t, cfg);
            if (!step.op2) continue;
            step.removed.assign(step.op2->triangle.begin(), step.op2->triangle.end());
        }
        step.n_after = step.n_before - static_cast<int>(step.removed.size());
        return step;
    }
    return std::nullopt;
}

bool same_step(const CleaningStep& a, const CleaningStep& b) {
    auto same1 = [](const std::optional<Operation1Witness>& x,
                    const std::optional<Operation1Witness>& y) {
        return x.has_value() == y.has_value() &&
               (!x || (x->vertex == y->vertex && x->product == y->product));
    };
    auto same2 = [](const std::optional<Operation2Witness>& x,
                    const std::optional<Operation2Witness>& y) {
        return x.has_value() == y.has_value() &&
               (!x || (x->triangle == y->triangle && x->joint_neighborhood == y->joint_neighborhood &&
                       x->list_sizes == y->list_sizes && x->rainbow_copies == y->rainbow_copies));
    };
    return a.operation == b.operation && a.removed == b.removed && a.n_before == b.n_before &&
           a.n_after == b.n_after && same1(a.op1, b.op1) && same2(a.op2, b.op2);
}

}  // namespace

CleaningTrace clean(const Template& t, const CleaningConfig& cfg) {
    validate(cfg);
    if (cfg.r != t.colors()) fail(ErrorKind::InvalidArgument, "config r differs from template");
    CleaningTrace trace;
    trace.config = cfg;
    CleaningState s = initial_state(t);
    trace.initial_edges = s.graph.size();
    while (true) {
        if (at_floor(s, cfg)) {
            trace.stop = StopReason::SizeFloor;
            break;
        }
        auto step = next_step(s, t, cfg);
        if (!step) {
            trace.stop = StopReason::NoOperation;
            break;
        }
        s = apply(s, *step);
        trace.steps.push_back(std::move(*step));
    }
    trace.final_state = std::move(s);
    return trace;
}

ReplayResult replay_trace(const Template& t, const CleaningTrace& trace) {
    const CleaningConfig& cfg = trace.config;
    validate(cfg);
    CleaningState s = initial_state(t);
    auto mismatch = [](std::size_t i, std::string message) {
        return ReplayResult{false, i, std::move(message)};
    };
    if (s.graph.size() != trace.initial_edges) return mismatch(0, "G_0 edge count differs");
    for (std::size_t i = 0; i < trace.steps.size(); ++i) {
        const CleaningStep& recorded = trace.steps[i];
        if (at_floor(s, cfg)) return mismatch(i, "state already at the size floor");
        // The witness must satisfy its own guard, and must be the one the scan picks.
        if (recorded.op1) {
            const auto product = operation1_guard(s, t, cfg, recorded.op1->vertex);
            if (!product || *product != recorded.op1->product) {
                return mismatch(i, "operation 1 guard fails for the recorded vertex");
            }
        }
        if (recorded.op2) {
            const auto w = operation2_guard(s, t, cfg, recorded.op2->triangle);
            if (!w) return mismatch(i, "operation 2 guard fails for the recorded triangle");
        }
        const auto expected = next_step(s, t, cfg);
        if (!expected || !same_step(*expected, recorded)) {
            return mismatch(i, "recomputed step differs");
        }
        s = apply(s, recorded);
    }
    StopReason stop = StopReason::SizeFloor;
    if (!at_floor(s, cfg)) {
        if (next_step(s, t, cfg)) {
            return mismatch(trace.steps.size(), "trace stops while an operation still applies");
        }
        stop = StopReason::NoOperation;
    }
    if (stop != trace.stop) return mismatch(trace.steps.size(), "stop reason differs");
    if (!(s == trace.final_state)) return mismatch(trace.steps.size(), "final graph differs");
    return {};
}

CriticalSets critical_sets(const CleaningState& s, const Template& t, const Count& n,
                           CopyReading reading) {
    CriticalSets out;
    out.n_p = s.size();
    const Graph& g = s.graph;
    std::vector<std::size_t> per_edge(g.size(), 0);
    std::vector<std::size_t> per_vertex(static_cast<std::size_t>(g.order()), 0);
    for (VertexSet tri : enumerate_cliques(g, 3)) {
        if ((tri & s.alive) != tri) continue;
        if (!is_critical_triangle(t, g, tri, n, reading)) continue;
        std::array<int, 3> vs{};
        int i = 0;
        for (VertexSet b = tri; b; b &= b - 1) vs[static_cast<std::size_t>(i++)] = std::countr_zero(b);
        out.triangles.push_back(vs);
        for (int a = 0; a < 3; ++a) {
            ++per_vertex[static_cast<std::size_t>(vs[static_cast<std::size_t>(a)])];
            for (int b = a + 1; b < 3; ++b) {
                ++per_edge[g.require_edge(vs[static_cast<std::size_t>(a)], vs[static_cast<std::size_t>(b)])];
            }
        }
    }
    const Count edge_bar = ipow(out.n_p, 11);
    const Count vertex_bar = ipow(out.n_p, 23);
    for (EdgeId e = 0; e < g.size(); ++e) {
        if (per_edge[e] > 0 && ipow(Count(per_edge[e]), 12) >= edge_bar) out.edges.push_back(g.edge(e));
    }
    for (int v = 0; v < g.order(); ++v) {
        const auto c = per_vertex[static_cast<std::size_t>(v)];
        if (c > 0 && ipow(Count(c), 12) >= vertex_bar) out.vertices.push_back(v);
    }
    return out;
}

SupersaturationBound supersaturation_bound(const Count& n, const Count& t, int k,
                                           const Count& edges) {
    if (n < 1 || t < 1 || k < 1) fail(ErrorKind::InvalidArgument, "need n, t, k >= 1");
    SupersaturationBound out;
    out.bracket = Rational(edges + t) - make_rational(Count(k - 1) * n * n, Count(2 * k));
    const Rational scale = Rational(ipow(n, static_cast<std::uint64_t>(k - 1))) /
                           Rational(factorial(static_cast<unsigned>(k)));
    const Rational big = scale * out.bracket / rpow(euler::lower(), 2 * k);
    const Rational small = scale * out.bracket / rpow(euler::upper(), 2 * k);
    // A negative bracket flips which end of the e-interval gives the lower bound.
    out.value = out.bracket >= 0 ? Interval{small, big} : Interval{big, small};
    return out;
}

}  // namespace rtl
