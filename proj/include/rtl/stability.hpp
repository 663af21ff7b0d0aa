#pragma once

// Cleaning of a template's host graph (singleton-edge removal, then the vertex and
// triangle operations), critical triangles/edges/vertices, and the supersaturation
// bound for graphs far from k-partite.

#include "rtl/exact.hpp"
#include "rtl/template.hpp"

#include <array>
#include <optional>
#include <string_view>
#include <vector>

namespace rtl {

/// xi = delta / (300 e^6), rounded down by using the upper bound on e.
Rational xi_from_delta(const Rational& delta);

struct CleaningConfig {
    int r = 0;
    Rational xi;
    Count n;  // original vertex count; drives the stopping floor and triangle criticality
    std::array<int, 2> priority{1, 2};
    CopyReading reading = CopyReading::Selections;
};

/// Throws InvalidArgument unless 0 < xi < 1, r >= 2 and priority is a permutation of {1, 2}.
void validate(const CleaningConfig& cfg);

/// Default config for a template: r and n from t, priority 1 then 2.
CleaningConfig make_cleaning_config(const Template& t, const Rational& xi);

/// A spanning subgraph of the host (same labels) plus the vertices still present.
/// Removed vertices are isolated and excluded from alive.
struct CleaningState {
    Graph graph;
    VertexSet alive = 0;

    int size() const { return popcount(alive); }
    friend bool operator==(const CleaningState&, const CleaningState&) = default;
};

/// G_0: drops every edge whose list has exactly one color.
Graph remove_singleton_edges(const Template& t);
CleaningState initial_state(const Template& t);

/// Product of |L(uv)| over the neighbors u of v when it is at most r^((2 - xi^2)(n_i - 1)/3).
std::optional<Count> operation1_guard(const CleaningState& s, const Template& t,
                                      const CleaningConfig& cfg, int v);

struct Operation1Witness {
    int vertex = 0;
    Count product;
};

std::optional<Operation1Witness> operation1_step(const CleaningState& s, const Template& t,
                                                 const CleaningConfig& cfg);

struct Operation2Witness {
    std::array<int, 3> triangle{};
    int joint_neighborhood = 0;
    std::array<int, 3> list_sizes{};  // descending
    Count rainbow_copies;             // through the triangle, inside the current graph
};

/// Rainbow copies through `tri` within the current graph reach n^(5/6).
bool is_critical_triangle(const Template& t, const Graph& g, VertexSet tri, const Count& n,
                          CopyReading reading = CopyReading::Selections);

std::optional<Operation2Witness> operation2_guard(const CleaningState& s, const Template& t,
                                                  const CleaningConfig& cfg,
                                                  const std::array<int, 3>& tri);

/// First qualifying triangle in lexicographic vertex order.
std::optional<Operation2Witness> operation2_step(const CleaningState& s, const Template& t,
                                                 const CleaningConfig& cfg);

struct CleaningStep {
    int operation = 1;
    std::vector<int> removed;
    int n_before = 0;
    int n_after = 0;
    std::optional<Operation1Witness> op1;
    std::optional<Operation2Witness> op2;
};

enum class StopReason { SizeFloor, NoOperation };
std::string_view to_string(StopReason reason);

struct CleaningTrace {
    CleaningConfig config;
    std::size_t initial_edges = 0;  // e(G_0)
    std::vector<CleaningStep> steps;
    CleaningState final_state;
    StopReason stop = StopReason::NoOperation;
};

CleaningState apply(const CleaningState& s, const CleaningStep& step);

CleaningTrace clean(const Template& t, const CleaningConfig& cfg);

struct ReplayResult {
    bool ok = true;
    std::optional<std::size_t> mismatch;  // index of the first step that failed; steps.size() for the end
    std::string message;
};

/// Recomputes every guard from G_0 and checks each recorded step and the stop reason.
ReplayResult replay_trace(const Template& t, const CleaningTrace& trace);

struct CriticalSets {
    Count n_p;
    std::vector<std::array<int, 3>> triangles;  // X_3
    std::vector<Edge> edges;                    // X_2
    std::vector<int> vertices;                  // X_1
};

/// Triangles of s.graph with at least n^(5/6) rainbow copies; edges and vertices in at
/// least n_p^(11/12) and n_p^(23/12) of them, n_p = |alive|.
CriticalSets critical_sets(const CleaningState& s, const Template& t, const Count& n,
                           CopyReading reading = CopyReading::Selections);

struct SupersaturationBound {
    Rational bracket;  // e + t - (1 - 1/k) n^2 / 2
    Interval value;    // encloses n^(k-1) / (e^(2k) k!) * bracket
    const Rational& certified() const { return value.lo; }
};

/// Minimum number of K_{k+1} copies in an n-vertex graph with `edges` edges that is
/// not t-close to k-partite.
SupersaturationBound supersaturation_bound(const Count& n, const Count& t, int k,
                                           const Count& edges);

}  // namespace rtl
