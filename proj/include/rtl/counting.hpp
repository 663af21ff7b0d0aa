#pragma once

#include "rtl/graph.hpp"

#include <optional>
#include <string>
#include <vector>

namespace rtl {

struct CountOptions {
    int workers = 1;
    /// Partition prefixes of this many edges become independent tasks.
    int split_depth = 4;
};

/// Number of r-colorings of g with no K_k whose C(k,2) edges get pairwise distinct colors.
Count count_colorings(const Graph& g, int r, int k, const CountOptions& options = {});

/// rho(G) as a polynomial in r: sum_j S_j * r(r-1)...(r-j+1), where S_j counts the
/// partitions of E(G) into j classes with no K_k spread over C(k,2) distinct classes.
struct PartitionPolynomial {
    Graph host;
    int k = 0;
    std::vector<Count> coeffs;  // coeffs[j] = S_j for j = 0..e(host)

    Count coefficient(std::size_t j) const { return j < coeffs.size() ? coeffs[j] : Count(0); }
    Count evaluate(int r) const;
};

inline constexpr std::size_t kDefaultPartitionCap = 15;

PartitionPolynomial partition_polynomial(const Graph& g, int k,
                                         std::size_t edge_cap = kDefaultPartitionCap,
                                         const CountOptions& options = {});

inline constexpr std::uint64_t kDefaultOracleCap = 1'000'000'000;

/// Plain enumeration of all r^e(g) colorings; the test oracle.
Count brute_force_count(const Graph& g, int r, int k, std::uint64_t cap = kDefaultOracleCap);

/// Upper bound on the partition leaves count_colorings visits for (g, r, k).
Count estimate_work(const Graph& g, int r, int k);

struct SearchEntry {
    std::string graph6;
    std::size_t edges = 0;
    Count count;
};

struct SearchReport {
    int n = 0;
    int r = 0;
    int k = 0;
    bool internal_enumeration = true;  // false when the classes came from a graph6 stream
    std::string best_graph6;
    Count best_count;
    Count extremal_edges;  // ex(n, K_k)
    Count turan_count;     // r^ex(n, K_k)
    int best_vs_turan = 0;  // sign of best_count - turan_count
    std::optional<bool> argmax_is_turan;  // known when n <= 8
    std::vector<SearchEntry> table;       // input order
};

struct SearchOptions {
    CountOptions counting;
    Count work_budget = Count(10'000'000'000LL);
};

/// Maximum of count_colorings over isomorphism classes: enumerated internally for n <= 6,
/// otherwise taken from `input`. Ties go to the lexicographically least graph6 string.
SearchReport rho_max_search(int n, int r, int k, const std::vector<Graph>* input = nullptr,
                            const SearchOptions& options = {});

enum class Dominance { CliqueColoring, Turan };

struct BoundsVerdict {
    Dominance winner;
    Count clique_side;  // (C(k,2) - 1)^(k-1)
    Count turan_side;   // r^(k-2)
};

/// Which lower bound on rho_{r,k}(n) grows faster: (C(k,2)-1)^e(K_n) or r^ex(n,K_k).
BoundsVerdict bounds_compare(int r, int k);

std::string_view to_string(Dominance d);

}  // namespace rtl
