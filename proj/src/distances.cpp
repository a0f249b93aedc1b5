#include "topovel/distances.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace topovel {

namespace {

double lp_norm(double dx, double dy, double p) {
  dx = std::abs(dx);
  dy = std::abs(dy);
  if (std::isinf(p)) return std::max(dx, dy);
  if (p == 1.0) return dx + dy;
  if (p == 2.0) return std::hypot(dx, dy);
  return std::pow(std::pow(dx, p) + std::pow(dy, p), 1.0 / p);
}

double power(double x, double q) { return q == 1.0 ? x : std::pow(x, q); }

}  // namespace

double diagonal_distance(const PersistencePair& point, double p) {
  const double half = (point.death - point.birth) / 2.0;
  if (std::isinf(p)) return half;
  if (p == 1.0) return point.death - point.birth;
  return half * std::pow(2.0, 1.0 / p);
}

// Shortest augmenting path (Jonker-Volgenant style potentials), O(n^3).
std::vector<std::size_t> solve_assignment(const std::vector<double>& cost, std::size_t n) {
  if (cost.size() != n * n) throw std::invalid_argument("solve_assignment: matrix is not n x n");
  constexpr double kInf = std::numeric_limits<double>::infinity();
  // 1-based with a virtual column 0 holding the row being inserted.
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<std::size_t> row_of(n + 1, 0), way(n + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) {
    row_of[0] = i;
    std::size_t j0 = 0;
    std::vector<double> min_to(n + 1, kInf);
    std::vector<bool> used(n + 1, false);
    do {
      used[j0] = true;
      const std::size_t i0 = row_of[j0];
      double delta = kInf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double reduced = cost[(i0 - 1) * n + (j - 1)] - u[i0] - v[j];
        if (reduced < min_to[j]) {
          min_to[j] = reduced;
          way[j] = j0;
        }
        if (min_to[j] < delta) {
          delta = min_to[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[row_of[j]] += delta;
          v[j] -= delta;
        } else {
          min_to[j] -= delta;
        }
      }
      j0 = j1;
    } while (row_of[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      row_of[j0] = row_of[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<std::size_t> assignment(n);
  for (std::size_t j = 1; j <= n; ++j) assignment[row_of[j] - 1] = j - 1;
  return assignment;
}

MatchingResult wasserstein(const PersistenceDiagram& d1, const PersistenceDiagram& d2,
                           double p, double q) {
  if (d1.dimension != d2.dimension)
    throw std::invalid_argument("wasserstein: diagrams have different homological dimensions");
  if (!(p >= 1.0) || !(q >= 1.0) || std::isinf(q))
    throw std::invalid_argument("wasserstein: require p >= 1 and finite q >= 1");
  if (d1.has_essential() || d2.has_essential())
    throw std::invalid_argument("wasserstein: diagrams must be finite");

  // Rows: points of d1 then diagonal copies of d2's points.
  // Columns: points of d2 then diagonal copies of d1's points.
  const std::size_t n1 = d1.size(), n2 = d2.size(), n = n1 + n2;
  MatchingResult result;
  if (n == 0) return result;
  constexpr double kForbidden = 1e300;
  std::vector<double> cost(n * n, 0.0);
  for (std::size_t i = 0; i < n1; ++i) {
    const auto& a = d1.pairs[i];
    for (std::size_t j = 0; j < n2; ++j) {
      const auto& b = d2.pairs[j];
      cost[i * n + j] = power(lp_norm(a.birth - b.birth, a.death - b.death, p), q);
    }
    for (std::size_t j = 0; j < n1; ++j)
      cost[i * n + n2 + j] = (i == j) ? power(diagonal_distance(a, p), q) : kForbidden;
  }
  for (std::size_t i = 0; i < n2; ++i) {
    const auto& b = d2.pairs[i];
    for (std::size_t j = 0; j < n2; ++j)
      cost[(n1 + i) * n + j] = (i == j) ? power(diagonal_distance(b, p), q) : kForbidden;
    // diagonal-to-diagonal entries stay 0
  }

  const auto assignment = solve_assignment(cost, n);
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = assignment[i];
    if (i < n1 && j < n2) {
      result.assignment.push_back({i, j});
    } else if (i < n1) {
      result.assignment.push_back({i, std::nullopt});
    } else if (j < n2) {
      result.assignment.push_back({std::nullopt, j});
    } else {
      continue;
    }
    total += cost[i * n + j];
  }
  result.cost = q == 1.0 ? total : std::pow(total, 1.0 / q);
  return result;
}

double d11(const PersistenceDiagram& d1, const PersistenceDiagram& d2) {
  return wasserstein(d1, d2, 1.0, 1.0).cost;
}

double total_persistence(const PersistenceDiagram& diagram) {
  double total = 0.0;
  for (const auto& p : diagram.pairs) {
    if (p.is_essential())
      throw std::invalid_argument("total_persistence: essential class present");
    total += p.death - p.birth;
  }
  return total;
}

}  // namespace topovel
