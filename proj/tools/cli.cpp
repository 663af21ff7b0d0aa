#include "cli.hpp"

#include "cache.hpp"
#include "rtl/container.hpp"
#include "rtl/counting.hpp"
#include "rtl/graph6.hpp"
#include "rtl/json_io.hpp"
#include "rtl/parallel.hpp"
#include "rtl/stability.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

namespace rtl::cli {

using nlohmann::json;
namespace jio = rtl::json;

int exit_code(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::CapExceeded:
        case ErrorKind::Infeasible:
            return kExitCap;
        case ErrorKind::ParseError:
        case ErrorKind::InvalidColor:
            return kExitParse;
        default:
            return kExitUsage;
    }
}

namespace {

struct RunConfig {
    std::string format = "json";
    int workers = 1;
    std::uint64_t oracle_cap = kDefaultOracleCap;
    std::size_t partition_cap = kDefaultPartitionCap;
    std::uint64_t materialization_cap = kDefaultMaterializationCap;
    std::string cache_path;
    bool no_cache = false;

    std::string graph;
    std::string input;
    std::string templ;
    int r = 0;
    int k = 4;
    int parts = 3;
    int n_small = 0;
    std::string n_big;
    std::string t_big;
    std::string e_big;
    std::string xi;
    std::string delta;
    std::string priority = "1,2";
    std::string reading = "selections";
    std::string weights = "definition";
    std::string work_budget = "10000000000";
    std::string replay;
    std::vector<int> at;
    int exact_cap = kDefaultClosenessExactCap;
    bool brute = false;
    bool materialize = false;
    bool list = false;
};

struct Io {
    std::istream& in;
    std::ostream& out;
    std::ostream& err;
};

// ---------------------------------------------------------------- input helpers

std::string read_all(std::istream& in) {
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string read_source(const std::string& source, std::istream& in) {
    if (source == "-") return read_all(in);
    std::ifstream file(source);
    if (!file) fail(ErrorKind::InvalidArgument, "cannot open " + source);
    return read_all(file);
}

std::string first_line(const std::string& text) {
    std::istringstream ss(text);
    std::string line;
    while (std::getline(ss, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
        if (!line.empty()) return line;
    }
    fail(ErrorKind::ParseError, "no graph6 line in input");
}

// A path or "-" is read; anything else is taken as inline graph6.
Graph load_graph(const std::string& spec, std::istream& in) {
    if (spec == "-" || std::filesystem::is_regular_file(spec)) {
        return parse_graph6(first_line(read_source(spec, in)));
    }
    return parse_graph6(spec);
}

std::vector<Graph> load_graphs(const std::string& source, std::istream& in) {
    std::istringstream ss(read_source(source, in));
    return read_graph6_stream(ss);
}

std::vector<std::string> load_lines(const std::string& source, std::istream& in) {
    std::istringstream ss(read_source(source, in));
    std::vector<std::string> out;
    for (std::string line; std::getline(ss, line);) {
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
        if (!line.empty()) out.push_back(line);
    }
    return out;
}

Template load_template(const std::string& spec, std::istream& in) {
    if (!spec.empty() && spec.front() == '{') return jio::parse_template(spec);
    return jio::parse_template(read_source(spec, in));
}

Count parse_big(const std::string& text, const char* what) {
    if (text.empty()) fail(ErrorKind::InvalidArgument, std::string("missing ") + what);
    try {
        return parse_count(text);
    } catch (const Error&) {
        fail(ErrorKind::InvalidArgument, std::string(what) + " must be a nonnegative integer");
    }
}

// "p/q", "3" or "0.0125"
Rational parse_rational_text(const std::string& text, const char* what) {
    const auto slash = text.find('/');
    if (slash != std::string::npos) {
        const Count den = parse_big(text.substr(slash + 1), what);
        if (den == 0) fail(ErrorKind::InvalidArgument, std::string(what) + " has zero denominator");
        return make_rational(parse_big(text.substr(0, slash), what), den);
    }
    const auto dot = text.find('.');
    if (dot == std::string::npos) return Rational(parse_big(text, what));
    const std::string frac = text.substr(dot + 1);
    const std::string whole = dot == 0 ? "0" : text.substr(0, dot);
    return make_rational(parse_big(whole + frac, what), ipow(10, frac.size()));
}

CopyReading parse_reading(const std::string& s) {
    if (s == "selections") return CopyReading::Selections;
    if (s == "subgraphs") return CopyReading::Subgraphs;
    fail(ErrorKind::InvalidArgument, "reading must be selections or subgraphs");
}

CodegreeWeights parse_weights(const std::string& s) {
    if (s == "definition") return CodegreeWeights::Definition;
    if (s == "expanded") return CodegreeWeights::Expanded;
    fail(ErrorKind::InvalidArgument, "weights must be definition or expanded");
}

std::array<int, 2> parse_priority(const std::string& s) {
    if (s == "1,2") return {1, 2};
    if (s == "2,1") return {2, 1};
    fail(ErrorKind::InvalidArgument, "priority must be 1,2 or 2,1");
}

// ---------------------------------------------------------------- jobs

struct Job {
    std::string operation;
    json params;
    std::function<json()> compute;
};

json error_record(const Error& e) {
    json rec = {{"error", std::string(to_string(e.kind()))}, {"message", e.what()}};
    if (e.offset()) rec["offset"] = *e.offset();
    return rec;
}

json execute(const Job& job, const std::optional<ResultCache>& cache) {
    std::string key;
    if (cache) {
        key = ResultCache::fingerprint(job.operation, job.params);
        if (auto hit = cache->lookup(key)) {
            (*hit)["cached"] = true;
            return *hit;
        }
    }
    json payload = job.params;
    payload.update(job.compute());
    payload["operation"] = job.operation;
    if (cache) cache->store(key, job.operation, payload);
    return payload;
}

// ---------------------------------------------------------------- output

std::string csv_cell(const json& v) {
    std::string s = v.is_string() ? v.get<std::string>() : v.is_null() ? "" : v.dump();
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string quoted = "\"";
    for (char c : s) {
        if (c == '"') quoted += '"';
        quoted += c;
    }
    return quoted + '"';
}

bool is_rational(const json& v) {
    return v.is_object() && v.size() == 2 && v.contains("num") && v.contains("den");
}

void flatten(const json& v, const std::string& prefix, std::vector<std::pair<std::string, json>>& out) {
    if (v.is_object() && !is_rational(v) && !v.empty()) {
        for (const auto& [key, child] : v.items()) {
            flatten(child, prefix.empty() ? key : prefix + "." + key, out);
        }
    } else if (is_rational(v)) {
        out.emplace_back(prefix, v["num"].get<std::string>() + "/" + v["den"].get<std::string>());
    } else if (v.is_array()) {
        std::string joined;
        bool scalar = true;
        for (const json& x : v) scalar = scalar && x.is_primitive();
        if (!scalar) {
            out.emplace_back(prefix, v.dump());
            return;
        }
        for (const json& x : v) {
            if (!joined.empty()) joined += ' ';
            joined += x.is_string() ? x.get<std::string>() : x.dump();
        }
        out.emplace_back(prefix, joined);
    } else {
        out.emplace_back(prefix, v);
    }
}

void write_csv(const std::vector<json>& records, std::ostream& out) {
    std::vector<std::vector<std::pair<std::string, json>>> rows;
    std::vector<std::string> header;
    for (const json& rec : records) {
        // A search report becomes one row per isomorphism class.
        if (rec.contains("table") && rec.value("operation", "") == "search") {
            for (const json& entry : rec["table"]) {
                std::vector<std::pair<std::string, json>> row = {
                    {"n", rec["n"]}, {"r", rec["r"]}, {"k", rec["k"]},
                    {"graph6", entry["graph6"]}, {"edges", entry["edges"]}, {"count", entry["count"]},
                    {"best", entry["graph6"] == rec["best_graph6"]},
                    {"turan", entry["graph6"] == rec["turan_graph6"]}};
                rows.push_back(std::move(row));
            }
            continue;
        }
        rows.emplace_back();
        flatten(rec, "", rows.back());
    }
    for (const auto& row : rows) {
        for (const auto& [key, _] : row) {
            if (std::find(header.begin(), header.end(), key) == header.end()) header.push_back(key);
        }
    }
    for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << csv_cell(header[i]);
    out << '\n';
    for (const auto& row : rows) {
        std::map<std::string, json> cells(row.begin(), row.end());
        for (std::size_t i = 0; i < header.size(); ++i) {
            auto it = cells.find(header[i]);
            out << (i ? "," : "") << (it == cells.end() ? "" : csv_cell(it->second));
        }
        out << '\n';
    }
}

void emit(const RunConfig& cfg, const std::vector<json>& records, std::ostream& out) {
    if (cfg.format == "csv") {
        write_csv(records, out);
    } else {
        for (const json& rec : records) out << rec.dump() << '\n';
    }
}

// ---------------------------------------------------------------- operations

using GraphJob = std::function<Job(const Graph&, int workers)>;

Job count_job(const RunConfig& cfg, const Graph& g, int workers) {
    json params = {{"graph", write_graph6(g)}, {"r", cfg.r}, {"k", cfg.k},
                   {"method", cfg.brute ? "brute-force" : "engine"}};
    return {"count", params, [&cfg, g, workers] {
                CountOptions opts;
                opts.workers = workers;
                const Count c = cfg.brute ? brute_force_count(g, cfg.r, cfg.k, cfg.oracle_cap)
                                          : count_colorings(g, cfg.r, cfg.k, opts);
                return json{{"count", jio::count(c)}, {"edges", g.size()}};
            }};
}

Job poly_job(const RunConfig& cfg, const Graph& g, int workers) {
    json params = {{"graph", write_graph6(g)}, {"k", cfg.k}, {"at", cfg.at}};
    return {"poly", params, [&cfg, g, workers] {
                CountOptions opts;
                opts.workers = workers;
                const auto p = partition_polynomial(g, cfg.k, cfg.partition_cap, opts);
                json coeffs = json::array();
                for (const Count& c : p.coeffs) coeffs.push_back(jio::count(c));
                json values = json::object();
                for (int r : cfg.at) values[std::to_string(r)] = jio::count(p.evaluate(r));
                return json{{"coefficients", coeffs}, {"values", values}, {"edges", g.size()}};
            }};
}

Job closeness_job(const RunConfig& cfg, const Graph& g, int) {
    json params = {{"graph", write_graph6(g)}, {"k", cfg.parts}, {"exact_cap", cfg.exact_cap}};
    return {"closeness", params, [&cfg, g] {
                const auto c = closeness_to_kpartite(g, cfg.parts, cfg.exact_cap);
                return json{{"internal_edges", c.internal_edges},
                            {"partition", c.partition.assignment},
                            {"exact", c.exact}};
            }};
}

Job cliques_job(const RunConfig& cfg, const Graph& g, int) {
    json params = {{"graph", write_graph6(g)}, {"k", cfg.k}, {"list", cfg.list}};
    return {"cliques", params, [&cfg, g] {
                json result = {{"count", jio::count(count_cliques(g, cfg.k))}};
                if (cfg.list) {
                    json all = json::array();
                    for (VertexSet c : enumerate_cliques(g, cfg.k)) {
                        json vs = json::array();
                        for (; c; c &= c - 1) vs.push_back(std::countr_zero(c));
                        all.push_back(vs);
                    }
                    result["cliques"] = all;
                }
                return result;
            }};
}

std::vector<json> run_graph_jobs(const RunConfig& cfg, const GraphJob& make, const Io& io,
                                 const std::optional<ResultCache>& cache, int& status) {
    if (!cfg.input.empty()) {
        // Lines are parsed inside the worker so a bad record does not sink the batch.
        const auto lines = load_lines(cfg.input, io.in);
        std::vector<json> records(lines.size());
        std::vector<int> codes(lines.size(), kExitOk);
        parallel_for_indexed(lines.size(), cfg.workers, [&](std::size_t i) {
            try {
                records[i] = execute(make(parse_graph6(lines[i]), 1), cache);
            } catch (const Error& e) {
                records[i] = error_record(e);
                records[i]["index"] = i;
                codes[i] = exit_code(e.kind());
            }
        });
        for (int c : codes) {
            if (c != kExitOk) {
                status = c;
                break;
            }
        }
        return records;
    }
    if (cfg.graph.empty()) fail(ErrorKind::InvalidArgument, "give --graph or --input");
    return {execute(make(load_graph(cfg.graph, io.in), cfg.workers), cache)};
}

json search_record(const RunConfig& cfg, const Io& io, const std::optional<ResultCache>& cache) {
    std::optional<std::vector<Graph>> input;
    if (!cfg.input.empty()) input = load_graphs(cfg.input, io.in);
    json params = {{"n", cfg.n_small}, {"r", cfg.r}, {"k", cfg.k}};
    if (input) {
        json g6 = json::array();
        for (const Graph& g : *input) g6.push_back(write_graph6(g));
        params["input"] = g6;
    }
    Job job{"search", params, [&] {
                SearchOptions opts;
                opts.counting.workers = cfg.workers;
                opts.work_budget = parse_big(cfg.work_budget, "work budget");
                const SearchReport rep =
                    rho_max_search(cfg.n_small, cfg.r, cfg.k, input ? &*input : nullptr, opts);
                json table = json::array();
                for (const SearchEntry& e : rep.table) {
                    table.push_back({{"graph6", e.graph6}, {"edges", e.edges}, {"count", jio::count(e.count)}});
                }
                const Graph turan = turan_graph(cfg.n_small, cfg.k - 1);
                const char* cmp = rep.best_vs_turan > 0 ? "greater" : rep.best_vs_turan < 0 ? "less" : "equal";
                return json{{"internal_enumeration", rep.internal_enumeration},
                            {"classes", rep.table.size()},
                            {"best_graph6", rep.best_graph6},
                            {"best_count", jio::count(rep.best_count)},
                            {"extremal_edges", jio::count(rep.extremal_edges)},
                            {"turan_graph6", write_graph6(turan.order() <= kMaxCanonicalOrder ? canonical_form(turan) : turan)},
                            {"turan_count", jio::count(rep.turan_count)},
                            {"best_vs_turan", cmp},
                            {"argmax_is_turan", rep.argmax_is_turan ? json(*rep.argmax_is_turan) : json(nullptr)},
                            {"table", table}};
            }};
    return execute(job, cache);
}

json template_stats_record(const RunConfig& cfg, const Io& io, const std::optional<ResultCache>& cache) {
    const Template t = load_template(cfg.templ, io.in);
    json params = {{"template", jio::to_json(t)}, {"materialize", cfg.materialize}};
    Job job{"template-stats", params, [&] {
                const auto hist = list_size_histogram(t);
                HypergraphOptions opts;
                opts.materialize = cfg.materialize;
                opts.cap = cfg.materialization_cap;
                return json{{"vertices", t.host().order()},
                            {"edges", t.host().size()},
                            {"complete", t.is_complete()},
                            {"list_sizes", hist.counts},
                            {"small_lists", hist.small_lists},
                            {"rainbow_copies", jio::count(count_rainbow_copies(t, CopyReading::Selections))},
                            {"rainbow_k4s", jio::count(count_rainbow_copies(t, CopyReading::Subgraphs))},
                            {"hypergraph", jio::to_json(build_rainbow_hypergraph(t, opts))}};
            }};
    return execute(job, cache);
}

json container_stats_record(const RunConfig& cfg, const std::optional<ResultCache>& cache) {
    json params = {{"n", cfg.n_big}, {"r", cfg.r}, {"weights", cfg.weights}};
    Job job{"container-stats", params, [&] {
                const Count n = parse_big(cfg.n_big, "n");
                return jio::to_json(container_hypothesis_check(n, cfg.r, parse_weights(cfg.weights)));
            }};
    return execute(job, cache);
}

json container_threshold_record(const RunConfig& cfg, const std::optional<ResultCache>& cache) {
    json params = {{"r", cfg.r}, {"weights", cfg.weights}};
    Job job{"container-threshold", params, [&] {
                const auto w = parse_weights(cfg.weights);
                const Count n = min_n_for_container(cfg.r, w);
                const auto at = container_hypothesis_check(n, cfg.r, w);
                const auto below = container_hypothesis_check(n - 1, cfg.r, w);
                return json{{"min_n", jio::count(n)},
                            {"passes_at_min", at.passes()},
                            {"passes_below", below.passes()},
                            {"report", jio::to_json(at)}};
            }};
    return execute(job, cache);
}

Rational resolve_xi(const RunConfig& cfg) {
    if (!cfg.xi.empty() && !cfg.delta.empty()) fail(ErrorKind::InvalidArgument, "give --xi or --delta, not both");
    if (!cfg.xi.empty()) return parse_rational_text(cfg.xi, "xi");
    if (!cfg.delta.empty()) return xi_from_delta(parse_rational_text(cfg.delta, "delta"));
    fail(ErrorKind::InvalidArgument, "give --xi or --delta");
}

CleaningConfig cleaning_config(const RunConfig& cfg, const Template& t) {
    CleaningConfig c = make_cleaning_config(t, resolve_xi(cfg));
    c.priority = parse_priority(cfg.priority);
    c.reading = parse_reading(cfg.reading);
    validate(c);
    return c;
}

json clean_record(const RunConfig& cfg, const Io& io, const std::optional<ResultCache>& cache) {
    const Template t = load_template(cfg.templ, io.in);
    if (!cfg.replay.empty()) {
        const auto trace = jio::trace_from_json(nlohmann::json::parse(read_source(cfg.replay, io.in), nullptr, false));
        const ReplayResult r = replay_trace(t, trace);
        json rec = {{"operation", "replay"}, {"replay_ok", r.ok}, {"steps", trace.steps.size()}};
        if (!r.ok) {
            rec["mismatch_step"] = *r.mismatch;
            rec["message"] = r.message;
        }
        return rec;
    }
    const CleaningConfig c = cleaning_config(cfg, t);
    json params = {{"template", jio::to_json(t)}, {"xi", jio::rational(c.xi)},
                   {"priority", c.priority}, {"reading", cfg.reading}};
    Job job{"clean", params, [&] {
                const CleaningTrace trace = clean(t, c);
                return json{{"trace", jio::to_json(trace)}, {"replay_ok", replay_trace(t, trace).ok}};
            }};
    return execute(job, cache);
}

json critical_record(const RunConfig& cfg, const Io& io, const std::optional<ResultCache>& cache) {
    const Template t = load_template(cfg.templ, io.in);
    const bool cleaned = !cfg.xi.empty() || !cfg.delta.empty();
    json params = {{"template", jio::to_json(t)}, {"reading", cfg.reading}};
    std::optional<CleaningConfig> c;
    if (cleaned) {
        c = cleaning_config(cfg, t);
        params["xi"] = jio::rational(c->xi);
        params["priority"] = c->priority;
    }
    Job job{"critical", params, [&] {
                CleaningState s{t.host(), t.host().vertices()};
                if (c) s = clean(t, *c).final_state;
                const auto sets = critical_sets(s, t, t.host().order(), parse_reading(cfg.reading));
                json out = jio::to_json(sets);
                out["state"] = cleaned ? "cleaned" : "host";
                out["state_graph"] = write_graph6(s.graph);
                return out;
            }};
    return execute(job, cache);
}

json supersat_record(const RunConfig& cfg, const Io& io, const std::optional<ResultCache>& cache) {
    std::optional<Graph> g;
    if (!cfg.graph.empty()) g = load_graph(cfg.graph, io.in);
    const Count n = g ? Count(g->order()) : parse_big(cfg.n_big, "n");
    const Count e = g ? Count(g->size()) : parse_big(cfg.e_big, "edge count");
    const Count t = parse_big(cfg.t_big, "t");
    json params = {{"n", jio::count(n)}, {"t", jio::count(t)}, {"k", cfg.parts}, {"e", jio::count(e)}};
    if (g) params["graph"] = write_graph6(*g);
    Job job{"supersat", params, [&] {
                const auto bound = supersaturation_bound(n, t, cfg.parts, e);
                json out = jio::to_json(bound);
                if (g) {
                    const auto close = closeness_to_kpartite(*g, cfg.parts);
                    const Count copies = count_cliques(*g, cfg.parts + 1);
                    out["copies"] = jio::count(copies);
                    out["closeness"] = close.internal_edges;
                    out["closeness_exact"] = close.exact;
                    out["hypothesis"] = Count(close.internal_edges) > t;
                    out["holds"] = Rational(copies) >= bound.value.hi;
                }
                return out;
            }};
    return execute(job, cache);
}

json bounds_record(const RunConfig& cfg) {
    const BoundsVerdict v = bounds_compare(cfg.r, cfg.k);
    return {{"operation", "bounds-compare"},
            {"r", cfg.r},
            {"k", cfg.k},
            {"winner", std::string(to_string(v.winner))},
            {"clique_side", jio::count(v.clique_side)},
            {"turan_side", jio::count(v.turan_side)}};
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err) {
    RunConfig cfg;
    CLI::App app{"Exact computations for rainbow-K_k-free edge colorings", "rtl"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--workers", cfg.workers, "Worker threads")->check(CLI::PositiveNumber);
    app.add_option("--oracle-cap", cfg.oracle_cap, "Brute-force coloring cap")->check(CLI::PositiveNumber);
    app.add_option("--partition-cap", cfg.partition_cap, "Edge cap for partition polynomials")
        ->check(CLI::PositiveNumber);
    app.add_option("--materialization-cap", cfg.materialization_cap, "Hyperedge cap")
        ->check(CLI::PositiveNumber);
    app.add_option("--cache", cfg.cache_path, "JSONL result cache (RTL_CACHE overrides)");
    app.add_flag("--no-cache", cfg.no_cache, "Ignore any cache");

    auto graph_opts = [&](CLI::App* sub, bool batch) {
        sub->add_option("--graph,-g", cfg.graph, "graph6 string, file, or - for stdin");
        if (batch) sub->add_option("--input,-i", cfg.input, "graph6 stream (file or -), one record per line");
    };

    auto* count = app.add_subcommand("count", "Count rainbow-K_k-free r-colorings");
    graph_opts(count, true);
    count->add_option("-r", cfg.r, "Colors")->required();
    count->add_option("-k", cfg.k, "Clique order")->capture_default_str();
    count->add_flag("--brute", cfg.brute, "Use plain enumeration (oracle)");

    auto* poly = app.add_subcommand("poly", "Partition polynomial in r");
    graph_opts(poly, true);
    poly->add_option("-k", cfg.k, "Clique order")->capture_default_str();
    poly->add_option("--at", cfg.at, "Evaluate at these r");

    auto* search = app.add_subcommand("search", "Maximize the count over n-vertex graphs");
    search->add_option("-n", cfg.n_small, "Vertices")->required();
    search->add_option("-r", cfg.r, "Colors")->required();
    search->add_option("-k", cfg.k, "Clique order")->capture_default_str();
    search->add_option("--input,-i", cfg.input, "graph6 stream of candidate classes");
    search->add_option("--work-budget", cfg.work_budget, "Refuse searches estimated above this");

    auto* tstats = app.add_subcommand("template-stats", "Template and rainbow hypergraph statistics");
    tstats->add_option("--template", cfg.templ, "Template JSON file, inline JSON, or -")->required();
    tstats->add_flag("--materialize", cfg.materialize, "Materialize even complete templates");

    auto* cstats = app.add_subcommand("container-stats", "Container hypothesis check on K_n");
    cstats->add_option("-n", cfg.n_big, "Vertices (decimal)")->required();
    cstats->add_option("-r", cfg.r, "Colors")->required();
    cstats->add_option("--weights", cfg.weights, "definition|expanded")->capture_default_str();

    auto* cthresh = app.add_subcommand("container-threshold", "Least n passing the container check");
    cthresh->add_option("-r", cfg.r, "Colors")->required();
    cthresh->add_option("--weights", cfg.weights, "definition|expanded")->capture_default_str();

    auto* cleaning = app.add_subcommand("clean", "Run the cleaning procedure on a template");
    cleaning->add_option("--template", cfg.templ, "Template JSON file, inline JSON, or -")->required();
    cleaning->add_option("--xi", cfg.xi, "xi as p/q or decimal");
    cleaning->add_option("--delta", cfg.delta, "derive xi = delta / (300 e^6)");
    cleaning->add_option("--priority", cfg.priority, "1,2 or 2,1")->capture_default_str();
    cleaning->add_option("--reading", cfg.reading, "selections|subgraphs")->capture_default_str();
    cleaning->add_option("--replay", cfg.replay, "Replay a trace JSON file instead");

    auto* critical = app.add_subcommand("critical", "Critical triangles, edges and vertices");
    critical->add_option("--template", cfg.templ, "Template JSON file, inline JSON, or -")->required();
    critical->add_option("--xi", cfg.xi, "Clean first with this xi");
    critical->add_option("--delta", cfg.delta, "Clean first with xi derived from delta");
    critical->add_option("--priority", cfg.priority, "1,2 or 2,1")->capture_default_str();
    critical->add_option("--reading", cfg.reading, "selections|subgraphs")->capture_default_str();

    auto* closeness = app.add_subcommand("closeness", "Fewest internal edges over k-partitions");
    graph_opts(closeness, true);
    closeness->add_option("-k", cfg.parts, "Parts")->capture_default_str();
    closeness->add_option("--exact-cap", cfg.exact_cap, "Exact search up to this many vertices")->capture_default_str();

    auto* cliques = app.add_subcommand("cliques", "Count K_k copies");
    graph_opts(cliques, true);
    cliques->add_option("-k", cfg.k, "Clique order")->required();
    cliques->add_flag("--list", cfg.list, "Also list them");

    auto* supersat = app.add_subcommand("supersat", "Supersaturation bound for graphs far from k-partite");
    graph_opts(supersat, false);
    supersat->add_option("-n", cfg.n_big, "Vertices");
    supersat->add_option("-t", cfg.t_big, "Closeness parameter")->required();
    supersat->add_option("-k", cfg.parts, "Parts")->capture_default_str();
    supersat->add_option("-e", cfg.e_big, "Edges");

    auto* bounds = app.add_subcommand("bounds-compare", "Compare the two lower-bound constructions");
    bounds->add_option("-r", cfg.r, "Colors")->required();
    bounds->add_option("-k", cfg.k, "Clique order")->capture_default_str();

    for (auto* sub : app.get_subcommands({})) sub->fallthrough();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        out << json{{"error", "usage"}, {"message", e.what()}}.dump() << '\n';
        return kExitUsage;
    }

    if (const char* env = std::getenv("RTL_CACHE"); env && *env) cfg.cache_path = env;
    std::optional<ResultCache> cache;
    if (!cfg.cache_path.empty() && !cfg.no_cache) cache.emplace(cfg.cache_path, err);

    const Io io{in, out, err};
    int status = kExitOk;
    std::vector<json> records;
    try {
        const auto bind = [&cfg](Job (*f)(const RunConfig&, const Graph&, int)) -> GraphJob {
            return [&cfg, f](const Graph& g, int w) { return f(cfg, g, w); };
        };
        if (count->parsed()) {
            records = run_graph_jobs(cfg, bind(count_job), io, cache, status);
        } else if (poly->parsed()) {
            records = run_graph_jobs(cfg, bind(poly_job), io, cache, status);
        } else if (closeness->parsed()) {
            records = run_graph_jobs(cfg, bind(closeness_job), io, cache, status);
        } else if (cliques->parsed()) {
            records = run_graph_jobs(cfg, bind(cliques_job), io, cache, status);
        } else if (search->parsed()) {
            records = {search_record(cfg, io, cache)};
        } else if (tstats->parsed()) {
            records = {template_stats_record(cfg, io, cache)};
        } else if (cstats->parsed()) {
            records = {container_stats_record(cfg, cache)};
        } else if (cthresh->parsed()) {
            records = {container_threshold_record(cfg, cache)};
        } else if (cleaning->parsed()) {
            records = {clean_record(cfg, io, cache)};
        } else if (critical->parsed()) {
            records = {critical_record(cfg, io, cache)};
        } else if (supersat->parsed()) {
            records = {supersat_record(cfg, io, cache)};
        } else if (bounds->parsed()) {
            records = {bounds_record(cfg)};
        }
    } catch (const Error& e) {
        out << error_record(e).dump() << '\n';
        return exit_code(e.kind());
    } catch (const nlohmann::json::exception& e) {
        out << json{{"error", "parse-error"}, {"message", e.what()}}.dump() << '\n';
        return kExitParse;
    }
    emit(cfg, records, out);
    return status;
}

}  // namespace rtl::cli
