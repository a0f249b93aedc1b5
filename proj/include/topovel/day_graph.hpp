#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "topovel/complex.hpp"
#include "topovel/series.hpp"

namespace topovel {

/// Undirected graph of the `top_rank` most active nodes of one day.
///
/// Activity is the number of incident transactions, ties broken by total
/// incident amount (larger first) and then by identifier. Node weight is
/// the mean amount over all of the node's transactions that day, computed
/// before the cut. Nodes are stored in identifier order.
WeightedGraph build_day_graph(std::span<const Transaction> transactions, std::size_t top_rank);

/// Graph-level means of node centralities, in this order.
inline constexpr std::array<const char*, 4> kBaselineColumns{"degree", "closeness", "betweenness",
                                                             "clustering"};
using BaselineFeatures = std::array<double, 4>;

/// Means over nodes of degree centrality deg/(n-1), harmonic closeness
/// sum(1/dist)/(n-1), normalized betweenness and local clustering
/// coefficient. All zero for graphs with fewer than two nodes.
BaselineFeatures baseline_features(const WeightedGraph& graph);

/// Per-node betweenness (Brandes), normalized by (n-1)(n-2)/2.
std::vector<double> betweenness_centrality(const WeightedGraph& graph);

}  // namespace topovel
