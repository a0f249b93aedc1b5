#include "topovel/summaries.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace topovel {

HierarchicalGrid::HierarchicalGrid(double alpha, double beta, std::size_t m, std::size_t n_sub)
    : alpha_(alpha), beta_(beta), m_(m), n_sub_(n_sub) {
  if (!(alpha < beta) || !std::isfinite(alpha) || !std::isfinite(beta))
    throw std::invalid_argument("HierarchicalGrid: need finite alpha < beta");
  if (m == 0 || n_sub == 0)
    throw std::invalid_argument("HierarchicalGrid: m and n_sub must be positive");
  sub_width_ = (beta - alpha) / static_cast<double>(m * n_sub);
  bounds_.reserve(m * n_sub + 1);
  for (std::size_t j = 0; j < m; ++j) {
    const double s = main_start(j);
    const double main_width = (j + 1 == m ? beta_ : main_start(j + 1)) - s;
    for (std::size_t l = 0; l < n_sub; ++l)
      bounds_.push_back(s + static_cast<double>(l) * (main_width / static_cast<double>(n_sub)));
  }
  bounds_.push_back(beta_);
}

double HierarchicalGrid::main_start(std::size_t j) const {
  if (j == m_) return beta_;
  return alpha_ + static_cast<double>(j) * (beta_ - alpha_) / static_cast<double>(m_);
}

std::ptrdiff_t HierarchicalGrid::cell_of(double x) const {
  if (!(x >= alpha_) || x > beta_) return -1;
  if (x == beta_) return static_cast<std::ptrdiff_t>(cell_count()) - 1;
  const auto it = std::upper_bound(bounds_.begin(), bounds_.end(), x);
  return (it - bounds_.begin()) - 1;
}

std::string_view method_name(SummaryMethod method) {
  switch (method) {
    case SummaryMethod::kHnav: return "hnav";
    case SummaryMethod::kHwnav: return "hwnav";
    case SummaryMethod::kOwHnpv: return "owhnpv";
    case SummaryMethod::kVab: return "vab";
    case SummaryMethod::kLandscape: return "pl";
    case SummaryMethod::kImage: return "pi";
  }
  return "?";
}

SummaryMethod parse_method(std::string_view name) {
  for (auto m : {SummaryMethod::kHnav, SummaryMethod::kHwnav, SummaryMethod::kOwHnpv,
                 SummaryMethod::kVab, SummaryMethod::kLandscape, SummaryMethod::kImage})
    if (method_name(m) == name) return m;
  throw std::invalid_argument("unknown summary method: " + std::string(name));
}

bool is_velocity_method(SummaryMethod method) {
  return method == SummaryMethod::kHnav || method == SummaryMethod::kHwnav ||
         method == SummaryMethod::kOwHnpv;
}

namespace {

void require_finite(const PersistenceDiagram& diagram, const char* who) {
  if (diagram.has_essential())
    throw std::invalid_argument(std::string(who) + ": diagram has essential classes; finalize it first");
}

// Shared by HNAV and HWNAV: events in each cell, weighted by event_weight.
std::vector<double> event_velocity(const PersistenceDiagram& diagram, const HierarchicalGrid& grid,
                                   const std::function<double(const PersistencePair&)>& event_weight) {
  std::vector<double> mass(grid.cell_count(), 0.0);
  for (const auto& p : diagram.pairs) {
    const double w = event_weight(p);
    if (const auto c = grid.cell_of(p.birth); c >= 0) mass[static_cast<std::size_t>(c)] += w;
    if (const auto c = grid.cell_of(p.death); c >= 0) mass[static_cast<std::size_t>(c)] += w;
  }
  std::vector<double> v(grid.m(), 0.0);
  for (std::size_t j = 0; j < grid.m(); ++j) {
    double sum = 0.0;
    for (std::size_t l = 0; l < grid.n_sub(); ++l)
      sum += mass[j * grid.n_sub() + l] / (2.0 * grid.sub_width());
    v[j] = sum / static_cast<double>(grid.n_sub());
  }
  return v;
}

double standard_normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

}  // namespace

SummaryVector hnav(const PersistenceDiagram& diagram, const HierarchicalGrid& grid) {
  require_finite(diagram, "hnav");
  SummaryVector out{SummaryMethod::kHnav, std::vector<double>(grid.m(), 0.0)};
  if (diagram.empty()) return out;
  out.values = event_velocity(diagram, grid, [](const PersistencePair&) { return 1.0; });
  const auto n = static_cast<double>(diagram.size());
  for (auto& x : out.values) x /= n;
  return out;
}

SummaryVector hwnav(const PersistenceDiagram& diagram, const HierarchicalGrid& grid) {
  require_finite(diagram, "hwnav");
  SummaryVector out{SummaryMethod::kHwnav, std::vector<double>(grid.m(), 0.0)};
  double total = 0.0;
  for (const auto& p : diagram.pairs) total += p.persistence();
  if (total <= 0.0) return out;
  out.values = event_velocity(diagram, grid, [](const PersistencePair& p) { return p.persistence(); });
  for (auto& x : out.values) x /= total;
  return out;
}

SummaryVector ow_hnpv(const PersistenceDiagram& diagram, const HierarchicalGrid& grid) {
  require_finite(diagram, "ow_hnpv");
  SummaryVector out{SummaryMethod::kOwHnpv, std::vector<double>(grid.m(), 0.0)};
  double total = 0.0;
  for (const auto& p : diagram.pairs) total += p.persistence();
  if (total <= 0.0) return out;

  const auto bounds = grid.bounds();
  const std::size_t cells = grid.cell_count();
  std::vector<double> overlap(cells, 0.0);
  for (const auto& p : diagram.pairs) {
    if (!(p.birth < p.death) || p.death <= grid.alpha() || p.birth >= grid.beta()) continue;
    std::size_t c = 0;
    if (p.birth > grid.alpha())
      c = static_cast<std::size_t>(std::upper_bound(bounds.begin(), bounds.end(), p.birth) -
                                   bounds.begin()) - 1;
    for (; c < cells && bounds[c] < p.death; ++c)
      overlap[c] += overlap_weight(p.birth, p.death, bounds[c], bounds[c + 1]);
  }
  for (std::size_t j = 0; j < grid.m(); ++j) {
    double velocity_sum = 0.0;
    for (std::size_t l = 0; l < grid.n_sub(); ++l)
      velocity_sum += overlap[j * grid.n_sub() + l] / grid.sub_width();
    out.values[j] = velocity_sum / static_cast<double>(grid.n_sub()) / total;
  }
  return out;
}

std::vector<double> main_breakpoints(const HierarchicalGrid& grid) {
  std::vector<double> out;
  out.reserve(grid.m() + 1);
  for (std::size_t j = 0; j <= grid.m(); ++j) out.push_back(grid.main_start(j));
  return out;
}

SummaryVector vab(const PersistenceDiagram& diagram, std::span<const double> breakpoints,
                  BettiWeight weight) {
  require_finite(diagram, "vab");
  if (breakpoints.size() < 2) throw std::invalid_argument("vab: need at least two breakpoints");
  for (std::size_t i = 1; i < breakpoints.size(); ++i)
    if (!(breakpoints[i - 1] < breakpoints[i]))
      throw std::invalid_argument("vab: breakpoints must be strictly increasing");
  const std::size_t cells = breakpoints.size() - 1;
  SummaryVector out{SummaryMethod::kVab, std::vector<double>(cells, 0.0)};
  for (std::size_t i = 0; i < cells; ++i) {
    const double lo = breakpoints[i], hi = breakpoints[i + 1];
    double integral = 0.0;
    for (const auto& p : diagram.pairs) {
      const double w = weight == BettiWeight::kUnit ? 1.0 : p.persistence();
      integral += w * overlap_weight(p.birth, p.death, lo, hi);
    }
    out.values[i] = integral / (hi - lo);
  }
  return out;
}

std::vector<double> linspace(double lo, double hi, std::size_t count) {
  if (count < 2) throw std::invalid_argument("linspace: need at least two points");
  std::vector<double> out(count);
  for (std::size_t i = 0; i < count; ++i)
    out[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
  out.back() = hi;
  return out;
}

SummaryVector landscape(const PersistenceDiagram& diagram, std::size_t k_max,
                        std::span<const double> samples) {
  require_finite(diagram, "landscape");
  if (k_max == 0) throw std::invalid_argument("landscape: K must be >= 1");
  if (samples.size() < 2) throw std::invalid_argument("landscape: need at least two samples");
  const std::size_t t_count = samples.size();
  SummaryVector out{SummaryMethod::kLandscape, std::vector<double>(k_max * t_count, 0.0)};
  std::vector<double> tents;
  for (std::size_t s = 0; s < t_count; ++s) {
    const double t = samples[s];
    tents.clear();
    for (const auto& p : diagram.pairs) {
      const double h = std::min(t - p.birth, p.death - t);
      if (h > 0.0) tents.push_back(h);
    }
    const std::size_t keep = std::min(k_max, tents.size());
    std::partial_sort(tents.begin(), tents.begin() + static_cast<std::ptrdiff_t>(keep), tents.end(),
                      std::greater<>());
    for (std::size_t k = 0; k < keep; ++k) out.values[k * t_count + s] = tents[k];
  }
  return out;
}

ImageConfig ImageConfig::for_range(double alpha, double beta) {
  ImageConfig c;
  c.birth_lo = alpha;
  c.birth_hi = beta;
  c.pers_lo = 0.0;
  c.pers_hi = beta - alpha;
  c.sigma = 0.1 * (beta - alpha);
  c.weight_scale = beta - alpha;
  return c;
}

SummaryVector persistence_image(const PersistenceDiagram& diagram, const ImageConfig& config) {
  require_finite(diagram, "persistence_image");
  if (config.birth_pixels == 0 || config.pers_pixels == 0)
    throw std::invalid_argument("persistence_image: resolution must be >= 1");
  if (!(config.sigma > 0.0) || !(config.weight_scale > 0.0))
    throw std::invalid_argument("persistence_image: sigma and weight scale must be positive");
  if (!(config.birth_lo < config.birth_hi) || !(config.pers_lo < config.pers_hi))
    throw std::invalid_argument("persistence_image: empty image window");

  const std::size_t nx = config.birth_pixels, ny = config.pers_pixels;
  const auto xs = linspace(config.birth_lo, config.birth_hi, nx + 1);
  const auto ys = linspace(config.pers_lo, config.pers_hi, ny + 1);
  SummaryVector out{SummaryMethod::kImage, std::vector<double>(nx * ny, 0.0)};
  std::vector<double> mass_x(nx), mass_y(ny);
  for (const auto& p : diagram.pairs) {
    const double pers = p.persistence();
    const double w = pers / config.weight_scale;
    if (w <= 0.0) continue;
    for (std::size_t i = 0; i < nx; ++i)
      mass_x[i] = standard_normal_cdf((xs[i + 1] - p.birth) / config.sigma) -
                  standard_normal_cdf((xs[i] - p.birth) / config.sigma);
    for (std::size_t r = 0; r < ny; ++r)
      mass_y[r] = standard_normal_cdf((ys[r + 1] - pers) / config.sigma) -
                  standard_normal_cdf((ys[r] - pers) / config.sigma);
    for (std::size_t r = 0; r < ny; ++r)
      for (std::size_t i = 0; i < nx; ++i) out.values[r * nx + i] += w * mass_y[r] * mass_x[i];
  }
  return out;
}

SummaryVector summarize(const PersistenceDiagram& diagram, SummaryMethod method,
                        const HierarchicalGrid& grid, const SummaryConfig& config) {
  switch (method) {
    case SummaryMethod::kHnav: return hnav(diagram, grid);
    case SummaryMethod::kHwnav: return hwnav(diagram, grid);
    case SummaryMethod::kOwHnpv: return ow_hnpv(diagram, grid);
    case SummaryMethod::kVab: return vab(diagram, main_breakpoints(grid), config.vab_weight);
    case SummaryMethod::kLandscape:
      return landscape(diagram, config.landscape_k,
                       linspace(grid.alpha(), grid.beta(), config.landscape_samples));
    case SummaryMethod::kImage:
      return persistence_image(diagram, ImageConfig::for_range(grid.alpha(), grid.beta()));
  }
  throw std::invalid_argument("summarize: unknown method");
}

}  // namespace topovel
