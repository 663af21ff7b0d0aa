#include "rtl/json_io.hpp"

#include "rtl/error.hpp"
#include "rtl/graph6.hpp"

#include <cstdio>

namespace rtl::json {

namespace {

[[noreturn]] void malformed(const std::string& what) {
    fail(ErrorKind::ParseError, "malformed JSON: " + what);
}

const json& field(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) malformed(std::string("missing field '") + key + "'");
    return j.at(key);
}

int int_field(const json& j, const char* key) {
    const json& v = field(j, key);
    if (!v.is_number_integer()) malformed(std::string("field '") + key + "' is not an integer");
    return v.get<int>();
}

std::string reading_name(CopyReading r) {
    return r == CopyReading::Selections ? "selections" : "subgraphs";
}

CopyReading parse_reading(const json& j) {
    if (j == "selections") return CopyReading::Selections;
    if (j == "subgraphs") return CopyReading::Subgraphs;
    malformed("unknown copy reading");
}

json vertex_list(VertexSet s) {
    json out = json::array();
    for (; s; s &= s - 1) out.push_back(std::countr_zero(s));
    return out;
}

}  // namespace

json count(const Count& c) { return to_decimal(c); }

json rational(const Rational& q) {
    return {{"num", to_decimal(numerator(q))}, {"den", to_decimal(denominator(q))}};
}

json interval(const Interval& i) {
    return {{"lo", rational(i.lo)}, {"hi", rational(i.hi)}, {"approx", approx((i.lo + i.hi) / 2)}};
}

Count parse_count(const json& j) {
    if (!j.is_string()) malformed("count must be a decimal string");
    return rtl::parse_count(j.get<std::string>());
}

Rational parse_rational(const json& j) {
    const Count den = parse_count(field(j, "den"));
    if (den == 0) malformed("zero denominator");
    Count num;
    const json& n = field(j, "num");
    if (n.is_string() && !n.get<std::string>().empty() && n.get<std::string>()[0] == '-') {
        num = -rtl::parse_count(n.get<std::string>().substr(1));
    } else {
        num = parse_count(n);
    }
    return make_rational(num, den);
}

std::string approx(const Rational& q, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, q.convert_to<double>());
    return buf;
}

json to_json(const Template& t) {
    json lists = json::array();
    for (ColorSet l : t.lists()) {
        json colors = json::array();
        for (; l; l &= l - 1) colors.push_back(std::countr_zero(l) + 1);
        lists.push_back(std::move(colors));
    }
    return {{"graph", write_graph6(t.host())}, {"r", t.colors()}, {"lists", std::move(lists)}};
}

Template template_from_json(const json& j) {
    const json& g = field(j, "graph");
    if (!g.is_string()) malformed("'graph' must be a graph6 string");
    Graph host = parse_graph6(g.get<std::string>());
    const int r = int_field(j, "r");
    if (r < 1 || r > kMaxColors) fail(ErrorKind::UnsupportedColors, "r must be in 1..64");
    const json& lists = field(j, "lists");
    if (!lists.is_array() || lists.size() != host.size()) {
        malformed("'lists' must hold one array per edge (" + std::to_string(host.size()) + ")");
    }
    std::vector<ColorSet> sets;
    for (const json& l : lists) {
        if (!l.is_array()) malformed("each list must be an array of colors");
        ColorSet s = 0;
        for (const json& c : l) {
            if (!c.is_number_integer()) malformed("colors must be integers");
            const int color = c.get<int>();
            if (color < 1 || color > r) {
                fail(ErrorKind::InvalidColor, "color " + std::to_string(color) + " outside 1.." + std::to_string(r));
            }
            s |= ColorSet{1} << (color - 1);
        }
        sets.push_back(s);
    }
    return Template(std::move(host), r, std::move(sets));
}

Template parse_template(std::string_view text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorKind::ParseError, e.what(), e.byte);
    }
    return template_from_json(j);
}

json to_json(const CleaningTrace& trace) {
    const CleaningConfig& c = trace.config;
    json config = {{"r", c.r},
                   {"xi", rational(c.xi)},
                   {"n", count(c.n)},
                   {"priority", c.priority},
                   {"reading", reading_name(c.reading)}};
    json steps = json::array();
    for (const CleaningStep& s : trace.steps) {
        json step = {{"operation", s.operation},
                     {"removed", s.removed},
                     {"n_before", s.n_before},
                     {"n_after", s.n_after}};
        if (s.op1) step["product"] = count(s.op1->product);
        if (s.op2) {
            step["triangle"] = s.op2->triangle;
            step["joint_neighborhood"] = s.op2->joint_neighborhood;
            step["list_sizes"] = s.op2->list_sizes;
            step["rainbow_copies"] = count(s.op2->rainbow_copies);
        }
        steps.push_back(std::move(step));
    }
    const CleaningState& f = trace.final_state;
    return {{"config", std::move(config)},
            {"initial_edges", trace.initial_edges},
            {"steps", std::move(steps)},
            {"final", {{"graph", write_graph6(f.graph)}, {"alive", vertex_list(f.alive)}, {"n_p", f.size()}}},
            {"stop", std::string(to_string(trace.stop))}};
}

CleaningTrace trace_from_json(const json& j) {
    CleaningTrace trace;
    try {
        const json& c = field(j, "config");
        trace.config.r = int_field(c, "r");
        trace.config.xi = parse_rational(field(c, "xi"));
        trace.config.n = parse_count(field(c, "n"));
        trace.config.priority = field(c, "priority").get<std::array<int, 2>>();
        trace.config.reading = parse_reading(field(c, "reading"));
        trace.initial_edges = field(j, "initial_edges").get<std::size_t>();
        for (const json& s : field(j, "steps")) {
            CleaningStep step;
            step.operation = int_field(s, "operation");
            step.removed = field(s, "removed").get<std::vector<int>>();
            step.n_before = int_field(s, "n_before");
            step.n_after = int_field(s, "n_after");
            if (s.contains("product")) {
                step.op1 = Operation1Witness{step.removed.at(0), parse_count(s.at("product"))};
            }
            if (s.contains("triangle")) {
                step.op2 = Operation2Witness{field(s, "triangle").get<std::array<int, 3>>(),
                                             int_field(s, "joint_neighborhood"),
                                             field(s, "list_sizes").get<std::array<int, 3>>(),
                                             parse_count(field(s, "rainbow_copies"))};
            }
            trace.steps.push_back(std::move(step));
        }
        const json& f = field(j, "final");
        trace.final_state.graph = parse_graph6(field(f, "graph").get<std::string>());
        for (int v : field(f, "alive").get<std::vector<int>>()) {
            if (v < 0 || v >= trace.final_state.graph.order()) malformed("alive vertex out of range");
            trace.final_state.alive |= vertex_bit(v);
        }
        const json& stop = field(j, "stop");
        if (stop == to_string(StopReason::SizeFloor)) {
            trace.stop = StopReason::SizeFloor;
        } else if (stop == to_string(StopReason::NoOperation)) {
            trace.stop = StopReason::NoOperation;
        } else {
            malformed("unknown stop reason");
        }
    } catch (const nlohmann::json::exception& e) {
        malformed(e.what());
    } catch (const std::out_of_range&) {
        malformed("operation 1 step without a removed vertex");
    }
    return trace;
}

json to_json(const CriticalSets& sets) {
    json edges = json::array();
    for (const Edge& e : sets.edges) edges.push_back({e.u, e.v});
    return {{"n_p", count(sets.n_p)},
            {"triangles", sets.triangles},
            {"edges", std::move(edges)},
            {"vertices", sets.vertices}};
}

json to_json(const RainbowHypergraphStats& stats) {
    json deltas = json::object();
    for (int j = 2; j <= kUniformity; ++j) deltas[std::to_string(j)] = count(stats.delta(j));
    return {{"vertices", count(stats.vertex_count)},
            {"edges", count(stats.edge_count)},
            {"average_degree", rational(stats.average_degree)},
            {"max_codegrees", std::move(deltas)},
            {"structural", stats.structural}};
}

json to_json(const ContainerReport& report) {
    const ContainerConstants& c = report.constants;
    json eps_exact = nullptr;
    if (c.epsilon_exact) eps_exact = rational(*c.epsilon_exact);
    json out = {{"n", count(c.n)},
                {"r", c.r},
                {"x6", rational(c.x.radicand)},
                {"tau_pow6", rational(c.tau_pow6)},
                {"tau", interval(report.tau_enclosure)},
                {"epsilon", interval(report.epsilon_enclosure)},
                {"epsilon_exact", std::move(eps_exact)},
                {"tau_threshold", rational(c.tau_threshold)},
                {"codegree_divisor", rational(c.codegree_divisor)},
                {"c_bound", count(c.c_bound)},
                {"hypergraph", to_json(report.stats)},
                {"vacuous", report.vacuous},
                {"epsilon_ok", report.epsilon_ok},
                {"tau_ok", report.tau_ok},
                {"delta_ok", report.delta_ok},
                {"delta_undetermined", report.delta_undetermined},
                {"passes", report.passes()},
                {"log_container_bound", approx(Rational(report.log_container_bound))}};
    out["delta"] = report.delta_enclosure ? interval(*report.delta_enclosure) : json(nullptr);
    out["delta_bound"] = report.delta_bound ? interval(*report.delta_bound) : json(nullptr);
    return out;
}

json to_json(const SupersaturationBound& bound) {
    return {{"bracket", rational(bound.bracket)},
            {"value", interval(bound.value)},
            {"certified_lower", rational(bound.certified())}};
}

}  // namespace rtl::json
