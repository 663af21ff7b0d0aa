#pragma once

#include "rtl/graph.hpp"

#include <functional>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

namespace rtl {

/// Standard graph6 encoding (upper triangle, column order), no header, no newline.
std::string write_graph6(const Graph& g);

/// Accepts an optional ">>graph6<<" header. Errors carry the byte offset.
Graph parse_graph6(std::string_view text);

/// Newline-delimited graph6 stream; blank lines are skipped.
std::vector<Graph> read_graph6_stream(std::istream& in);

inline constexpr int kMaxEnumerationOrder = 6;

/// One representative per isomorphism class, in increasing canonical-mask order.
/// The representative is the canonical form (see canonical_mask).
void enumerate_graphs(int n, const std::function<void(const Graph&)>& visit);
std::vector<Graph> enumerate_graphs(int n);

inline constexpr int kMaxCanonicalOrder = 8;

/// Edge mask over the complete graph's lexicographic edge order (bit i = edge i of K_n).
std::uint64_t edge_mask(const Graph& g);
Graph graph_from_edge_mask(int n, std::uint64_t mask);

/// Minimum edge mask over all vertex relabelings (n <= 8).
std::uint64_t canonical_mask(const Graph& g);
Graph canonical_form(const Graph& g);

}  // namespace rtl
