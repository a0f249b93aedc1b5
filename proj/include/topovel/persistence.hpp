#pragma once

#include <cmath>
#include <iosfwd>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "topovel/complex.hpp"

namespace topovel {

inline constexpr double kEssential = std::numeric_limits<double>::infinity();

struct PersistencePair {
  double birth = 0.0;
  double death = 0.0;  // kEssential for a class that never dies

  bool is_essential() const { return std::isinf(death); }
  double persistence() const { return death - birth; }

  friend bool operator==(const PersistencePair&, const PersistencePair&) = default;
};

enum class EssentialHandling { kKept, kCapped, kDropped };

/// How a diagram was post-processed; raw reduction output is kKept.
struct EssentialPolicy {
  EssentialHandling handling = EssentialHandling::kKept;
  double cap = kEssential;
  bool zero_persistence_discarded = false;
};

struct PersistenceDiagram {
  int dimension = 0;
  std::vector<PersistencePair> pairs;
  EssentialPolicy policy;

  std::size_t size() const { return pairs.size(); }
  bool empty() const { return pairs.empty(); }
  bool has_essential() const;

  /// Pairs sorted by (birth, death); used for multiset comparison.
  std::vector<PersistencePair> sorted_pairs() const;
};

/// Makes a finite diagram of the given dimension from (birth, death) pairs.
PersistenceDiagram make_diagram(std::vector<PersistencePair> pairs, int dimension = 0);

/// Standard persistence pairing by left-to-right column reduction over Z/2.
///
/// Returns one diagram per dimension 0..max_hom_dim. Zero-persistence pairs
/// are kept; unpaired creators give essential pairs. Throws
/// std::invalid_argument when the complex is not a valid filtration or is
/// too thin to compute H_max_hom_dim.
std::vector<PersistenceDiagram> compute_diagrams(const FilteredComplex& fc, int max_hom_dim);

/// Dimension-0 diagram by union-find with the elder rule. Matches the
/// dimension-0 output of compute_diagrams exactly.
PersistenceDiagram zero_dim_diagram(const FilteredComplex& fc);

/// Number of classes of `diagram` alive at t, i.e. b <= t < d.
int betti_at(const PersistenceDiagram& diagram, double t);

/// Betti number of H_k of the sublevel complex at t, read off the reduction.
int betti_at(const FilteredComplex& fc, double t, int k);

struct FinalizeOptions {
  /// Cap value for essential classes; std::nullopt drops them instead.
  std::optional<double> cap;
  bool discard_zero_persistence = true;
};

/// Removes or caps essential classes and optionally drops b == d pairs.
/// Throws std::invalid_argument if the cap lies below a birth.
PersistenceDiagram finalize_diagram(const PersistenceDiagram& raw, const FinalizeOptions& options);

/// CSV with header `dimension,birth,death`; essential deaths print as `inf`.
void write_diagrams_csv(std::ostream& out, const std::vector<PersistenceDiagram>& diagrams);

/// Reads the format written by write_diagrams_csv. Diagrams are returned
/// for dimensions 0..max present dimension (missing ones empty).
std::vector<PersistenceDiagram> read_diagrams_csv(std::istream& in);

}  // namespace topovel
