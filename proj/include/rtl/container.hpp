#pragma once

// The 6-uniform rainbow hypergraph of a template (vertices are (edge, color) pairs,
// hyperedges are rainbow K_4 copies), its co-degrees, and the hypothesis side of the
// hypergraph container theorem for the complete template on K_n.

#include "rtl/exact.hpp"
#include "rtl/template.hpp"

#include <array>
#include <optional>
#include <span>
#include <vector>

namespace rtl {

inline constexpr int kUniformity = 6;

struct HyperVertex {
    EdgeId edge = 0;
    ColorId color = 0;

    friend auto operator<=>(const HyperVertex&, const HyperVertex&) = default;
};

struct RainbowHypergraphStats {
    Count vertex_count;      // N = e(G) * r
    Count edge_count;        // e(H)
    Rational average_degree; // 6 e(H) / N, zero when N = 0
    std::array<Count, kUniformity + 1> max_codegrees{};  // entries 2..6 are meaningful
    bool structural = false;  // co-degrees from closed forms rather than materialization

    const Count& delta(int j) const { return max_codegrees[static_cast<std::size_t>(j)]; }
};

/// Hyperedges as sorted vertex ids, id = edge * r + color.
struct MaterializedHypergraph {
    std::size_t vertex_count = 0;
    int r = 0;
    std::vector<std::array<std::uint32_t, kUniformity>> edges;

    static std::uint32_t vertex_id(HyperVertex v, int r) {
        return static_cast<std::uint32_t>(v.edge * static_cast<std::size_t>(r) +
                                          static_cast<std::size_t>(v.color));
    }
};

inline constexpr std::uint64_t kDefaultMaterializationCap = 10'000'000;

MaterializedHypergraph materialize_rainbow_hypergraph(
    const Template& t, std::uint64_t cap = kDefaultMaterializationCap);

/// Delta_0..Delta_6 by counting every sub-multiset of every stored hyperedge
/// (Delta_0 = e(H), Delta_1 = max degree).
std::array<Count, kUniformity + 1> max_codegrees(const MaterializedHypergraph& h);

/// Row-major N x N matrix of pair co-degrees (diagonal holds degrees).
std::vector<std::uint64_t> pair_codegree_matrix(const MaterializedHypergraph& h);

struct HypergraphOptions {
    bool materialize = false;
    std::uint64_t cap = kDefaultMaterializationCap;
};

/// Complete templates use closed forms unless `materialize` is set; any other template
/// is materialized (refused above the cap).
RainbowHypergraphStats build_rainbow_hypergraph(const Template& t,
                                                const HypergraphOptions& options = {});

/// Closed-form statistics for the complete r-template on K_n, any n.
RainbowHypergraphStats complete_graph_stats(const Count& n, int r);

/// Number of rainbow copies containing every pair of S, counted on the template.
Count codegree(const Template& t, std::span<const HyperVertex> s);

/// Closed-form co-degree in the complete r-template of `host`:
/// #K_4 containing the vertices spanned by S, times (r-j)(r-j-1)...(r-5).
Count structural_codegree(const Graph& host, int r, std::span<const HyperVertex> s);

Count max_codegree(const Template& t, int j, const HypergraphOptions& options = {});

/// Inner weights of the co-degree functional: 2^-C(j-1,2) from its definition, or the
/// 2^-(j-2) of the expanded six-term form.
enum class CodegreeWeights { Definition, Expanded };

/// Delta(H, tau) = 2^(C(6,2)-1) * sum_{j=2..6} w_j Delta_j / (avg degree * tau^(j-1)).
Rational delta_tau(const RainbowHypergraphStats& stats, const Rational& tau,
                   CodegreeWeights weights = CodegreeWeights::Definition);

/// Delta(H, scale * x) as a Laurent polynomial in x.
Laurent delta_tau_series(const RainbowHypergraphStats& stats, const Rational& tau_scale,
                         CodegreeWeights weights = CodegreeWeights::Definition);

/// Constants for the complete template on K_n, expressed through
/// x = sqrt(12*6!) * n^(-1/3), which satisfies x^6 = 8640^3 / n^2:
///   tau = 2^9 x,  eps = n^(-1/3)/((r-1)(r-2)) = 8640 / (n (r-1)(r-2)) * x^-2.
struct ContainerConstants {
    Count n;
    int r = 0;
    Radical x;
    Rational tau_scale;     // tau = tau_scale * x
    Laurent epsilon;        // in x
    Rational tau_pow6;      // tau^6, exact
    std::optional<Rational> epsilon_exact;  // when n is a perfect cube
    Rational tau_threshold;      // 1/(200 * 6 * 6!^2)
    Rational codegree_divisor;   // 12 * 6!
    Count c_bound;               // 1000 * 6 * 6!^3
};

ContainerConstants container_constants(const Count& n, int r);

struct ContainerReport {
    ContainerConstants constants;
    RainbowHypergraphStats stats;
    bool vacuous = false;          // r < 6: no rainbow copies at all
    bool epsilon_ok = false;       // 0 < eps < 1/2
    bool tau_ok = false;           // tau < 1/(200 * 6 * 6!^2) (implies tau < 1/2)
    bool delta_ok = false;         // Delta(H, tau) <= eps / (12 * 6!)
    bool delta_undetermined = false;
    std::optional<Interval> delta_enclosure;    // Delta(H, tau)
    std::optional<Interval> delta_bound;        // eps / (12 * 6!)
    Interval tau_enclosure;
    Interval epsilon_enclosure;
    double log_container_bound = 0;  // c N tau log(1/eps) log(1/tau), reporting only

    bool passes() const { return !vacuous && epsilon_ok && tau_ok && delta_ok; }
};

ContainerReport container_hypothesis_check(const Count& n, int r,
                                           CodegreeWeights weights = CodegreeWeights::Definition);

/// Least n at which container_hypothesis_check passes.
Count min_n_for_container(int r, CodegreeWeights weights = CodegreeWeights::Definition);

}  // namespace rtl
