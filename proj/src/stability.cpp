#include "topovel/stability.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "topovel/distances.hpp"
#include "topovel/random.hpp"

namespace topovel {

StabilityReport stability_bound(const PersistenceDiagram& d1, const PersistenceDiagram& d2,
                                const HierarchicalGrid& grid) {
  StabilityReport r;
  r.p1 = total_persistence(d1);
  r.p2 = total_persistence(d2);
  if (!(r.p1 > 0.0) || !(r.p2 > 0.0))
    throw std::invalid_argument("stability_bound: both diagrams need positive total persistence");
  r.d11 = d11(d1, d2);
  const auto h1 = ow_hnpv(d1, grid).values;
  const auto h2 = ow_hnpv(d2, grid).values;
  for (std::size_t j = 0; j < h1.size(); ++j) r.lhs = std::max(r.lhs, std::abs(h1[j] - h2[j]));
  const double constant = 3.0 * static_cast<double>(grid.n_sub() * grid.m()) /
                          ((grid.beta() - grid.alpha()) * std::min(r.p1, r.p2));
  r.rhs = constant * r.d11;
  r.violated = r.lhs > r.rhs + kViolationTolerance;
  r.slack_ratio = r.rhs > 0.0 ? r.lhs / r.rhs : 0.0;
  return r;
}

namespace {

PersistencePair random_pair(Rng& rng, double alpha, double beta) {
  for (;;) {
    double b = uniform(rng, alpha, beta);
    double d = uniform(rng, alpha, beta);
    if (b == d) continue;
    if (b > d) std::swap(b, d);
    return {b, d};
  }
}

}  // namespace

PersistenceDiagram random_diagram(std::uint64_t seed, std::size_t n, double alpha, double beta) {
  if (n == 0) throw std::invalid_argument("random_diagram: n must be >= 1");
  if (!(alpha < beta)) throw std::invalid_argument("random_diagram: need alpha < beta");
  Rng rng(seed);
  std::vector<PersistencePair> pairs;
  pairs.reserve(n);
  for (std::size_t i = 0; i < n; ++i) pairs.push_back(random_pair(rng, alpha, beta));
  return make_diagram(std::move(pairs));
}

PersistenceDiagram perturb_diagram(const PersistenceDiagram& diagram, double eps, std::uint64_t seed) {
  if (!(eps >= 0.0)) throw std::invalid_argument("perturb_diagram: eps must be non-negative");
  Rng rng(seed);
  PersistenceDiagram out = diagram;
  out.policy = {};
  for (auto& p : out.pairs) {
    if (p.is_essential()) throw std::invalid_argument("perturb_diagram: diagram must be finite");
    for (;;) {
      // |db| + |dd| <= eps/2 + eps/2
      const double db = 0.5 * eps * uniform(rng, -1.0, 1.0);
      const double dd = 0.5 * eps * uniform(rng, -1.0, 1.0);
      if (p.birth + db < p.death + dd) {
        p.birth += db;
        p.death += dd;
        break;
      }
    }
  }
  return out;
}

LemmaReport lemma_suite(std::size_t trials, std::uint64_t seed) {
  if (trials == 0) throw std::invalid_argument("lemma_suite: trials must be >= 1");
  LemmaReport report;
  report.trials = trials;
  const double tol = kViolationTolerance;

  for (std::size_t t = 0; t < trials; ++t) {
    Rng rng(derive_seed(seed, t));
    const double alpha = uniform(rng, -1.0, 1.0);
    const double beta = alpha + uniform(rng, 0.5, 3.0);
    const HierarchicalGrid grid(alpha, beta, uniform_int(rng, 1, 10), uniform_int(rng, 1, 5));
    const auto bounds = grid.bounds();
    const double width = beta - alpha;

    // Total overlap: features inside the range, then features that may spill out.
    for (bool inside : {true, false}) {
      const auto f = inside ? random_pair(rng, alpha, beta)
                            : random_pair(rng, alpha - 0.5 * width, beta + 0.5 * width);
      double sum = 0.0;
      for (std::size_t c = 0; c + 1 < bounds.size(); ++c)
        sum += overlap_weight(f.birth, f.death, bounds[c], bounds[c + 1]);
      ++report.checks;
      const bool bad = sum > f.persistence() + tol || (inside && std::abs(sum - f.persistence()) > tol);
      if (bad) ++report.total_overlap_violations;
    }

    // Overlap difference, including intervals whose endpoints sit on the
    // feature's own birth or death.
    {
      const auto f = random_pair(rng, alpha, beta);
      const double scale = t == 0 ? 0.0 : width * std::pow(10.0, -uniform(rng, 0.0, 4.0));
      const auto g = perturb_diagram(make_diagram({f}), scale, rng()).pairs[0];
      const double delta = std::abs(f.birth - g.birth) + std::abs(f.death - g.death);
      auto lo = uniform(rng, alpha, beta), hi = uniform(rng, alpha, beta);
      if (lo > hi) std::swap(lo, hi);
      const double straddle[][2] = {{lo, hi}, {f.birth, hi}, {lo, f.death}, {f.death, f.death + width},
                                    {f.birth - width, f.birth}, {g.birth, g.death}};
      for (const auto& iv : straddle) {
        if (!(iv[0] < iv[1])) continue;
        const double w = overlap_weight(f.birth, f.death, iv[0], iv[1]);
        const double w2 = overlap_weight(g.birth, g.death, iv[0], iv[1]);
        ++report.checks;
        if (std::abs(w - w2) > 2.0 * delta + tol) ++report.overlap_difference_violations;
      }
    }

    // Velocity difference on equal-cardinality pairs built as perturbations.
    {
      const std::size_t n = uniform_int(rng, 1, 8);
      const auto d1 = random_diagram(rng(), n, alpha, beta);
      const double eps = t == 0 ? 0.0 : width * std::pow(10.0, -uniform(rng, 0.0, 3.0));
      const auto d2 = perturb_diagram(d1, eps, rng());
      const double dist = d11(d1, d2);
      const double dt = grid.sub_width();
      for (std::size_t c = 0; c + 1 < bounds.size(); ++c) {
        double v1 = 0.0, v2 = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
          v1 += overlap_weight(d1.pairs[i].birth, d1.pairs[i].death, bounds[c], bounds[c + 1]);
          v2 += overlap_weight(d2.pairs[i].birth, d2.pairs[i].death, bounds[c], bounds[c + 1]);
        }
        ++report.checks;
        if (std::abs(v1 / dt - v2 / dt) > 2.0 * dist / dt + tol) ++report.velocity_difference_violations;
      }
    }

    // Total persistence, with independent cardinalities.
    {
      const auto d1 = random_diagram(rng(), uniform_int(rng, 1, 8), alpha, beta);
      const auto d2 = t == 0 ? d1 : random_diagram(rng(), uniform_int(rng, 1, 8), alpha, beta);
      ++report.checks;
      if (std::abs(total_persistence(d1) - total_persistence(d2)) > d11(d1, d2) + tol)
        ++report.total_persistence_violations;
    }
  }
  return report;
}

TheoremReport theorem_suite(std::size_t trials, std::uint64_t seed, std::size_t m, std::size_t n_sub) {
  if (trials == 0) throw std::invalid_argument("theorem_suite: trials must be >= 1");
  const HierarchicalGrid grid(0.0, 1.0, m, n_sub);
  TheoremReport report;
  report.trials = trials;

  for (std::size_t t = 0; t < trials; ++t) {
    Rng rng(derive_seed(seed, t));
    const std::size_t n1 = uniform_int(rng, 1, 10);
    const auto d1 = random_diagram(rng(), n1, 0.0, 1.0);
    PersistenceDiagram d2;
    switch (t % 4) {
      case 0:  // near-identical, equal cardinality
        d2 = perturb_diagram(d1, std::pow(10.0, -uniform(rng, 1.0, 4.0)), rng());
        break;
      case 1: {  // independent, different cardinality
        std::size_t n2 = uniform_int(rng, 1, 9);
        if (n2 >= n1) ++n2;
        d2 = random_diagram(rng(), n2, 0.0, 1.0);
        break;
      }
      case 2: {  // perturbed copy with a few points added
        d2 = perturb_diagram(d1, 0.01, rng());
        const auto extra = random_diagram(rng(), uniform_int(rng, 1, 4), 0.0, 1.0);
        d2.pairs.insert(d2.pairs.end(), extra.pairs.begin(), extra.pairs.end());
        break;
      }
      default: {  // persistence shrunk by up to 100x
        const double shrink = uniform(rng, 1.0, 100.0);
        d2 = random_diagram(rng(), uniform_int(rng, 1, 10), 0.0, 1.0);
        for (auto& p : d2.pairs) p.death = p.birth + (p.death - p.birth) / shrink;
        break;
      }
    }
    if (d1.size() != d2.size()) ++report.unequal_cardinality_trials;

    const auto r = stability_bound(d1, d2, grid);
    if (r.violated) ++report.violations;
    report.max_slack_ratio = std::max(report.max_slack_ratio, r.slack_ratio);
    report.max_persistence_ratio =
        std::max(report.max_persistence_ratio, std::max(r.p1, r.p2) / std::min(r.p1, r.p2));

    auto augmented = d1;
    for (std::size_t k = uniform_int(rng, 1, 5); k > 0; --k) {
      const double x = uniform01(rng);
      augmented.pairs.push_back({x, x});
    }
    const auto h = ow_hnpv(d1, grid).values;
    const auto h_aug = ow_hnpv(augmented, grid).values;
    for (std::size_t j = 0; j < h.size(); ++j)
      report.max_diagonal_augmentation_delta =
          std::max(report.max_diagonal_augmentation_delta, std::abs(h[j] - h_aug[j]));
    report.max_diagonal_augmentation_delta =
        std::max(report.max_diagonal_augmentation_delta, std::abs(d11(augmented, d2) - r.d11));
  }
  return report;
}

}  // namespace topovel
