#include "rtl/counting.hpp"

#include "rtl/error.hpp"
#include "rtl/graph6.hpp"
#include "rtl/parallel.hpp"

#include <algorithm>
#include <numeric>

namespace rtl {

namespace {

void check_count_args(int r, int k) {
    if (r < 1) fail(ErrorKind::InvalidArgument, "need r >= 1");
    if (r > 64) fail(ErrorKind::UnsupportedColors, "at most 64 colors, got " + std::to_string(r));
    if (k < 3) fail(ErrorKind::InvalidArgument, "need k >= 3");
}

int clique_edges(int k) { return k * (k - 1) / 2; }

// Edges that lie in some K_k, in placement order, plus for every position the cliques
// whose last edge sits there (as lists of positions).
struct ConstraintIndex {
    std::vector<EdgeId> order;
    std::vector<std::vector<std::vector<std::uint8_t>>> completes;
    std::size_t free_edges = 0;
    int clique_size = 0;  // C(k,2)

    ConstraintIndex(const Graph& g, int k) : clique_size(clique_edges(k)) {
        const auto cliques = enumerate_cliques(g, k);
        std::vector<std::vector<EdgeId>> clique_edge_ids;
        std::vector<std::size_t> participation(g.size(), 0);
        for (VertexSet c : cliques) {
            std::vector<EdgeId> ids;
            for (VertexSet a = c; a; a &= a - 1) {
                const int u = std::countr_zero(a);
                for (VertexSet b = c & vertices_above(u); b; b &= b - 1) {
                    ids.push_back(g.require_edge(u, std::countr_zero(b)));
                }
            }
            for (EdgeId e : ids) ++participation[e];
            clique_edge_ids.push_back(std::move(ids));
        }
        for (EdgeId e = 0; e < g.size(); ++e) {
            if (participation[e] > 0) order.push_back(e);
        }
        // Busiest edges first so cliques complete (and prune) early.
        std::stable_sort(order.begin(), order.end(), [&](EdgeId a, EdgeId b) {
            return participation[a] > participation[b];
        });
        free_edges = g.size() - order.size();
        if (order.size() > 255) fail(ErrorKind::CapExceeded, "too many constrained edges");
        std::vector<std::size_t> position(g.size(), 0);
        for (std::size_t p = 0; p < order.size(); ++p) position[order[p]] = p;
        completes.resize(order.size());
        for (const auto& ids : clique_edge_ids) {
            std::vector<std::uint8_t> positions;
            for (EdgeId e : ids) positions.push_back(static_cast<std::uint8_t>(position[e]));
            const std::size_t last = *std::max_element(positions.begin(), positions.end());
            completes[last].push_back(std::move(positions));
        }
    }
};

// Restricted-growth-string enumeration of the constrained edges with at most
// `max_blocks` classes; hist[j] counts valid partitions with exactly j classes.
class PartitionWalker {
public:
    PartitionWalker(const ConstraintIndex& index, int max_blocks)
        : index_(index), max_blocks_(max_blocks), cls_(index.order.size(), 0),
          hist_(static_cast<std::size_t>(max_blocks) + 1, 0) {}

    // Valid prefixes of length `depth` (or full length if shorter).
    std::vector<std::vector<std::uint8_t>> prefixes(std::size_t depth) {
        std::vector<std::vector<std::uint8_t>> out;
        depth = std::min(depth, cls_.size());
        collect(0, 0, depth, out);
        return out;
    }

    std::vector<std::uint64_t> run_from(const std::vector<std::uint8_t>& prefix) {
        std::fill(hist_.begin(), hist_.end(), 0);
        int blocks = 0;
        for (std::size_t p = 0; p < prefix.size(); ++p) {
            cls_[p] = prefix[p];
            blocks = std::max(blocks, prefix[p] + 1);
        }
        walk(prefix.size(), blocks);
        return hist_;
    }

private:
    bool violates(std::size_t pos) const {
        for (const auto& clique : index_.completes[pos]) {
            std::uint64_t seen = 0;
            for (std::uint8_t p : clique) seen |= std::uint64_t{1} << cls_[p];
            if (popcount(seen) == index_.clique_size) return true;
        }
        return false;
    }

    void collect(std::size_t pos, int blocks, std::size_t depth,
                 std::vector<std::vector<std::uint8_t>>& out) {
        if (pos == depth) {
            out.emplace_back(cls_.begin(), cls_.begin() + static_cast<std::ptrdiff_t>(depth));
            return;
        }
        const int limit = std::min(blocks + 1, max_blocks_);
        for (int c = 0; c < limit; ++c) {
            cls_[pos] = static_cast<std::uint8_t>(c);
            if (violates(pos)) continue;
            collect(pos + 1, std::max(blocks, c + 1), depth, out);
        }
    }

    void walk(std::size_t pos, int blocks) {
        const std::size_t m = cls_.size();
        if (pos == m) {
            ++hist_[static_cast<std::size_t>(blocks)];
            return;
        }
        const int limit = std::min(blocks + 1, max_blocks_);
        if (pos + 1 == m) {
            for (int c = 0; c < limit; ++c) {
                cls_[pos] = static_cast<std::uint8_t>(c);
                if (!violates(pos)) ++hist_[static_cast<std::size_t>(std::max(blocks, c + 1))];
            }
            return;
        }
        for (int c = 0; c < limit; ++c) {
            cls_[pos] = static_cast<std::uint8_t>(c);
            if (violates(pos)) continue;
            walk(pos + 1, std::max(blocks, c + 1));
        }
    }

    const ConstraintIndex& index_;
    int max_blocks_;
    std::vector<std::uint8_t> cls_;
    std::vector<std::uint64_t> hist_;
};

// Histogram of valid partitions of the constrained edges by class count.
std::vector<Count> constrained_histogram(const ConstraintIndex& index, int max_blocks,
                                         const CountOptions& options) {
    if (index.order.empty()) return {Count(1)};
    PartitionWalker splitter(index, max_blocks);
    const auto prefixes = splitter.prefixes(static_cast<std::size_t>(std::max(0, options.split_depth)));
    std::vector<std::vector<std::uint64_t>> partial(prefixes.size());
    parallel_for_indexed(prefixes.size(), options.workers, [&](std::size_t i) {
        PartitionWalker walker(index, max_blocks);
        partial[i] = walker.run_from(prefixes[i]);
    });
    std::vector<Count> hist(static_cast<std::size_t>(max_blocks) + 1, 0);
    for (const auto& h : partial) {
        for (std::size_t j = 0; j < h.size(); ++j) hist[j] += h[j];
    }
    return hist;
}

}  // namespace

Count count_colorings(const Graph& g, int r, int k, const CountOptions& options) {
    check_count_args(r, k);
    const auto m = static_cast<std::uint64_t>(g.size());
    if (r < clique_edges(k)) return ipow(Count(r), m);
    const ConstraintIndex index(g, k);
    if (index.order.empty()) return ipow(Count(r), m);
    const int max_blocks = std::min<int>(r, static_cast<int>(index.order.size()));
    const auto hist = constrained_histogram(index, max_blocks, options);
    Count total = 0;
    for (std::size_t j = 0; j < hist.size(); ++j) {
        if (hist[j] != 0) total += hist[j] * falling_factorial(r, static_cast<unsigned>(j));
    }
    return total * ipow(Count(r), index.free_edges);
}

Count PartitionPolynomial::evaluate(int r) const {
    Count total = 0;
    for (std::size_t j = 0; j < coeffs.size(); ++j) {
        if (coeffs[j] != 0) total += coeffs[j] * falling_factorial(r, static_cast<unsigned>(j));
    }
    return total;
}

PartitionPolynomial partition_polynomial(const Graph& g, int k, std::size_t edge_cap,
                                         const CountOptions& options) {
    if (k < 3) fail(ErrorKind::InvalidArgument, "need k >= 3");
    if (g.size() > edge_cap) {
        fail(ErrorKind::CapExceeded,
             "partition polynomial refused: " + std::to_string(g.size()) + " edges exceed cap " +
                 std::to_string(edge_cap) + "; use count_colorings for a fixed r");
    }
    if (edge_cap > 64) fail(ErrorKind::InvalidArgument, "partition cap above 64 edges");
    const ConstraintIndex index(g, k);
    const auto hist = constrained_histogram(
        index, std::max<int>(1, static_cast<int>(index.order.size())), options);

    // Free edges extend a j-class partition: each lands in an existing class or opens one.
    const std::size_t m = g.size();
    PartitionPolynomial poly{g, k, std::vector<Count>(m + 1, 0)};
    for (std::size_t j = 0; j < hist.size(); ++j) {
        if (hist[j] == 0) continue;
        std::vector<Count> ext{1};
        for (std::size_t f = 0; f < index.free_edges; ++f) {
            std::vector<Count> next(ext.size() + 1, 0);
            for (std::size_t i = 0; i < ext.size(); ++i) {
                next[i] += ext[i] * Count(j + i);
                next[i + 1] += ext[i];
            }
            ext = std::move(next);
        }
        for (std::size_t i = 0; i < ext.size(); ++i) poly.coeffs[j + i] += hist[j] * ext[i];
    }
    return poly;
}

Count brute_force_count(const Graph& g, int r, int k, std::uint64_t cap) {
    check_count_args(r, k);
    const std::size_t m = g.size();
    const Count total = ipow(Count(r), m);
    if (total > cap) {
        fail(ErrorKind::CapExceeded, "brute force refused: " + to_decimal(total) +
                                         " colorings exceed oracle cap " + std::to_string(cap));
    }
    std::vector<std::vector<EdgeId>> cliques;
    for (VertexSet c : enumerate_cliques(g, k)) {
        std::vector<EdgeId> ids;
        for (VertexSet a = c; a; a &= a - 1) {
            const int u = std::countr_zero(a);
            for (VertexSet b = c & vertices_above(u); b; b &= b - 1) {
                ids.push_back(g.require_edge(u, std::countr_zero(b)));
            }
        }
        cliques.push_back(std::move(ids));
    }
    const int needed = clique_edges(k);
    std::vector<int> color(m, 0);
    std::uint64_t valid = 0;
    while (true) {
        bool rainbow = false;
        for (const auto& ids : cliques) {
            std::uint64_t seen = 0;
            for (EdgeId e : ids) seen |= std::uint64_t{1} << color[e];
            if (popcount(seen) == needed) {
                rainbow = true;
                break;
            }
        }
        if (!rainbow) ++valid;
        std::size_t i = 0;
        while (i < m && ++color[i] == r) color[i++] = 0;
        if (i == m) break;
    }
    return Count(valid);
}

Count estimate_work(const Graph& g, int r, int k) {
    check_count_args(r, k);
    if (r < clique_edges(k)) return 0;
    const ConstraintIndex index(g, k);
    if (index.order.empty()) return 0;
    const auto row = stirling2_row(static_cast<unsigned>(index.order.size()));
    Count leaves = 0;
    for (std::size_t j = 0; j < row.size() && j <= static_cast<std::size_t>(r); ++j) leaves += row[j];
    return leaves;
}

SearchReport rho_max_search(int n, int r, int k, const std::vector<Graph>* input,
                            const SearchOptions& options) {
    check_count_args(r, k);
    std::vector<Graph> classes;
    if (input) {
        classes = *input;
        for (const Graph& g : classes) {
            if (g.order() != n) {
                fail(ErrorKind::InvalidArgument, "input graph has " + std::to_string(g.order()) +
                                                     " vertices, expected " + std::to_string(n));
            }
        }
    } else {
        classes = enumerate_graphs(n);
    }

    Count work = 0;
    for (const Graph& g : classes) work += estimate_work(g, r, k);
    if (work > options.work_budget) {
        fail(ErrorKind::Infeasible, "search refused: estimated " + to_decimal(work) +
                                        " partition leaves exceed budget " +
                                        to_decimal(options.work_budget));
    }

    SearchReport report;
    report.n = n;
    report.r = r;
    report.k = k;
    report.internal_enumeration = input == nullptr;
    report.extremal_edges = extremal_number(static_cast<std::uint64_t>(n), k);
    report.turan_count = ipow(Count(r), report.extremal_edges.convert_to<std::uint64_t>());

    for (const Graph& g : classes) {
        report.table.push_back({write_graph6(g), g.size(), count_colorings(g, r, k, options.counting)});
    }
    const SearchEntry* best = nullptr;
    for (const auto& entry : report.table) {
        if (!best || entry.count > best->count ||
            (entry.count == best->count && entry.graph6 < best->graph6)) {
            best = &entry;
        }
    }
    if (best) {
        report.best_graph6 = best->graph6;
        report.best_count = best->count;
        report.best_vs_turan = best->count > report.turan_count ? 1
                               : best->count < report.turan_count ? -1 : 0;
        if (n <= kMaxCanonicalOrder) {
            report.argmax_is_turan =
                canonical_mask(parse_graph6(best->graph6)) == canonical_mask(turan_graph(n, k - 1));
        }
    }
    return report;
}

BoundsVerdict bounds_compare(int r, int k) {
    if (r < 1) fail(ErrorKind::InvalidArgument, "need r >= 1");
    if (k < 3) fail(ErrorKind::InvalidArgument, "need k >= 3");
    BoundsVerdict v{Dominance::Turan, ipow(Count(clique_edges(k) - 1), static_cast<std::uint64_t>(k - 1)),
                    ipow(Count(r), static_cast<std::uint64_t>(k - 2))};
    if (v.clique_side > v.turan_side) v.winner = Dominance::CliqueColoring;
    return v;
}

std::string_view to_string(Dominance d) {
    return d == Dominance::CliqueColoring ? "clique-coloring" : "turan";
}

}  // namespace rtl
