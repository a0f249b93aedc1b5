#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "topovel/persistence.hpp"

namespace topovel {

/// Filtration range [alpha, beta] cut into m equal main intervals, each cut
/// into n_sub equal subintervals. Cells are half-open except the last one,
/// which is closed at beta.
class HierarchicalGrid {
 public:
  HierarchicalGrid(double alpha, double beta, std::size_t m, std::size_t n_sub);

  double alpha() const { return alpha_; }
  double beta() const { return beta_; }
  std::size_t m() const { return m_; }
  std::size_t n_sub() const { return n_sub_; }
  std::size_t cell_count() const { return m_ * n_sub_; }

  /// Start of main interval j (0-based), s_{j+1} in one-based notation.
  double main_start(std::size_t j) const;
  /// Width of one subinterval, (beta - alpha) / (m * n_sub).
  double sub_width() const { return sub_width_; }

  /// Bounds of subinterval l of main interval j, both 0-based.
  double sub_start(std::size_t j, std::size_t l) const { return bounds_[j * n_sub_ + l]; }
  double sub_end(std::size_t j, std::size_t l) const { return bounds_[j * n_sub_ + l + 1]; }

  /// All m * n_sub + 1 cell boundaries.
  std::span<const double> bounds() const { return bounds_; }

  /// Flat index of the cell containing x, or -1 when x lies outside
  /// [alpha, beta]. x == beta maps to the last cell.
  std::ptrdiff_t cell_of(double x) const;

 private:
  double alpha_;
  double beta_;
  std::size_t m_;
  std::size_t n_sub_;
  double sub_width_;
  std::vector<double> bounds_;
};

enum class SummaryMethod { kHnav, kHwnav, kOwHnpv, kVab, kLandscape, kImage };

std::string_view method_name(SummaryMethod method);
/// Accepts hnav, hwnav, owhnpv, vab, pl, pi.
SummaryMethod parse_method(std::string_view name);
bool is_velocity_method(SummaryMethod method);

struct SummaryVector {
  SummaryMethod method = SummaryMethod::kOwHnpv;
  std::vector<double> values;
};

/// Length of [b, d) intersected with [lo, hi).
inline double overlap_weight(double birth, double death, double lo, double hi) {
  const double w = (death < hi ? death : hi) - (birth > lo ? birth : lo);
  return w > 0.0 ? w : 0.0;
}

/// Birth plus death counts per subinterval over 2*dt, averaged within each
/// main interval and divided by the number of features.
SummaryVector hnav(const PersistenceDiagram& diagram, const HierarchicalGrid& grid);

/// As hnav with each event weighted by the feature's persistence and the
/// result divided by total persistence.
SummaryVector hwnav(const PersistenceDiagram& diagram, const HierarchicalGrid& grid);

/// Overlap-weighted hierarchical normalized persistence velocity. Zero
/// vector when total persistence is 0.
SummaryVector ow_hnpv(const PersistenceDiagram& diagram, const HierarchicalGrid& grid);

enum class BettiWeight { kUnit, kPersistence };

/// Cell averages of the (weighted) Betti function over consecutive
/// breakpoints, integrated exactly.
SummaryVector vab(const PersistenceDiagram& diagram, std::span<const double> breakpoints,
                  BettiWeight weight = BettiWeight::kUnit);

/// Breakpoints of the m main intervals of `grid`.
std::vector<double> main_breakpoints(const HierarchicalGrid& grid);

/// Landscapes lambda_1..lambda_K sampled at `samples`, laid out
/// landscape-major (all samples of lambda_1 first).
SummaryVector landscape(const PersistenceDiagram& diagram, std::size_t k_max,
                        std::span<const double> samples);

/// T evenly spaced points covering [lo, hi].
std::vector<double> linspace(double lo, double hi, std::size_t count);

struct ImageConfig {
  double birth_lo = 0.0;
  double birth_hi = 1.0;
  double pers_lo = 0.0;
  double pers_hi = 1.0;
  std::size_t birth_pixels = 6;
  std::size_t pers_pixels = 5;
  double sigma = 0.1;
  /// Feature weight is persistence / weight_scale.
  double weight_scale = 1.0;

  /// Image over [alpha, beta] x [0, beta - alpha], sigma 0.1 (beta - alpha).
  static ImageConfig for_range(double alpha, double beta);
};

/// Persistence image in birth-persistence coordinates. Each pixel holds the
/// exact Gaussian mass over the pixel, summed over weighted features; pixels
/// are laid out persistence-row-major.
SummaryVector persistence_image(const PersistenceDiagram& diagram, const ImageConfig& config);

/// Method-specific knobs for summarize().
struct SummaryConfig {
  std::size_t landscape_k = 5;
  std::size_t landscape_samples = 6;
  BettiWeight vab_weight = BettiWeight::kUnit;
};

/// Dispatches on `method`; VAB uses the main intervals, landscapes sample
/// [alpha, beta], images use ImageConfig::for_range.
SummaryVector summarize(const PersistenceDiagram& diagram, SummaryMethod method,
                        const HierarchicalGrid& grid, const SummaryConfig& config = {});

}  // namespace topovel
