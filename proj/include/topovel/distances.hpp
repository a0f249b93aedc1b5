#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "topovel/persistence.hpp"

namespace topovel {

/// One matched pair; std::nullopt on a side means that point went to the
/// diagonal.
struct MatchedPair {
  std::optional<std::size_t> first;
  std::optional<std::size_t> second;
};

struct MatchingResult {
  double cost = 0.0;
  std::vector<MatchedPair> assignment;
};

/// L^p distance from (b, d) to its nearest diagonal point, (d - b)/2 * 2^(1/p).
/// p may be +infinity.
double diagonal_distance(const PersistencePair& point, double p);

/// Exact L^p q-Wasserstein distance with diagonal matching. Each off-diagonal
/// point of either diagram appears exactly once in the assignment.
///
/// Throws std::invalid_argument on a dimension mismatch, essential points,
/// or p, q < 1.
MatchingResult wasserstein(const PersistenceDiagram& d1, const PersistenceDiagram& d2,
                           double p = 1.0, double q = 1.0);

/// Shorthand for the L^1 1-Wasserstein cost.
double d11(const PersistenceDiagram& d1, const PersistenceDiagram& d2);

/// Sum of d - b. Throws std::invalid_argument on an essential point.
double total_persistence(const PersistenceDiagram& diagram);

/// Minimum-cost perfect assignment on a square row-major cost matrix.
/// Returns the column assigned to each row.
std::vector<std::size_t> solve_assignment(const std::vector<double>& cost, std::size_t n);

}  // namespace topovel
