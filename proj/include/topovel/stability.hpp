#pragma once

#include <cstddef>
#include <cstdint>

#include "topovel/persistence.hpp"
#include "topovel/summaries.hpp"

namespace topovel {

inline constexpr double kViolationTolerance = 1e-9;

/// Both sides of the OW-HNPV Lipschitz bound
///   ||H1 - H2||_inf <= 3 n_sub m / ((beta - alpha) min(P1, P2)) * d11.
struct StabilityReport {
  double lhs = 0.0;
  double rhs = 0.0;
  double d11 = 0.0;
  double p1 = 0.0;
  double p2 = 0.0;
  bool violated = false;
  double slack_ratio = 0.0;  // lhs / rhs, 0 when both vanish
};

/// Throws std::invalid_argument when either diagram has zero total persistence.
StabilityReport stability_bound(const PersistenceDiagram& d1, const PersistenceDiagram& d2,
                                const HierarchicalGrid& grid);

/// n pairs with alpha <= b < d <= beta, deterministic in seed.
PersistenceDiagram random_diagram(std::uint64_t seed, std::size_t n, double alpha, double beta);

/// Moves every point by an offset of L1 norm at most eps, redrawing offsets
/// that would give b >= d. Cardinality is preserved.
PersistenceDiagram perturb_diagram(const PersistenceDiagram& diagram, double eps, std::uint64_t seed);

struct LemmaReport {
  std::size_t trials = 0;
  std::size_t total_overlap_violations = 0;       // sum of overlaps <= persistence
  std::size_t overlap_difference_violations = 0;  // |w - w'| <= 2 delta
  std::size_t velocity_difference_violations = 0; // |V1 - V2| <= 2 d11 / dt
  std::size_t total_persistence_violations = 0;   // |P1 - P2| <= d11
  std::size_t checks = 0;

  std::size_t violations() const {
    return total_overlap_violations + overlap_difference_violations +
           velocity_difference_violations + total_persistence_violations;
  }
};

/// Randomized checks of the four lemmas behind the stability bound.
LemmaReport lemma_suite(std::size_t trials, std::uint64_t seed);

struct TheoremReport {
  std::size_t trials = 0;
  std::size_t violations = 0;
  std::size_t unequal_cardinality_trials = 0;
  double max_slack_ratio = 0.0;
  double max_persistence_ratio = 0.0;
  /// Largest change in OW-HNPV (sup norm) or d11 caused by appending
  /// zero-persistence points.
  double max_diagonal_augmentation_delta = 0.0;
};

/// Randomized pairs over [0, 1] with the given grid shape; a quarter of the
/// trials scale one diagram's persistence down by up to 100x.
TheoremReport theorem_suite(std::size_t trials, std::uint64_t seed, std::size_t m, std::size_t n_sub);

}  // namespace topovel
