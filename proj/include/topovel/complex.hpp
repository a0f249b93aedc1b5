#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace topovel {

using Vertex = std::uint32_t;

/// Undirected graph with a real value g(v) on every node.
///
/// Nodes are dense indices 0..size()-1; optional string labels are kept for
/// I/O only. Self-loops and duplicate edges are rejected on insertion.
class WeightedGraph {
 public:
  WeightedGraph() = default;
  explicit WeightedGraph(std::vector<double> node_weights,
                         std::vector<std::string> labels = {});

  Vertex add_node(double weight, std::string label = {});
  void add_edge(Vertex u, Vertex v);
  bool has_edge(Vertex u, Vertex v) const;

  std::size_t size() const { return weights_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  bool empty() const { return weights_.empty(); }

  double weight(Vertex v) const { return weights_.at(v); }
  std::span<const double> weights() const { return weights_; }
  const std::string& label(Vertex v) const { return labels_.at(v); }

  /// Edges as (lo, hi) pairs in insertion order.
  std::span<const std::pair<Vertex, Vertex>> edges() const { return edges_; }

  /// Sorted neighbour list.
  std::span<const Vertex> neighbors(Vertex v) const { return adjacency_.at(v); }

 private:
  std::vector<double> weights_;
  std::vector<std::string> labels_;
  std::vector<std::pair<Vertex, Vertex>> edges_;
  std::vector<std::vector<Vertex>> adjacency_;
};

/// A simplex given by its strictly ascending vertex list.
class Simplex {
 public:
  Simplex() = default;
  /// Sorts the input; throws std::invalid_argument on empty input or repeats.
  explicit Simplex(std::vector<Vertex> vertices);
  Simplex(std::initializer_list<Vertex> vertices)
      : Simplex(std::vector<Vertex>(vertices)) {}

  int dimension() const { return static_cast<int>(vertices_.size()) - 1; }
  std::span<const Vertex> vertices() const { return vertices_; }

  /// Codimension-1 faces, the i-th omitting vertex i. Empty for a vertex.
  std::vector<Simplex> facets() const;

  friend auto operator<=>(const Simplex&, const Simplex&) = default;
  friend bool operator==(const Simplex&, const Simplex&) = default;

 private:
  std::vector<Vertex> vertices_;
};

struct FilteredSimplex {
  Simplex simplex;
  double value = 0.0;
};

/// Simplices in filtration order together with their filtration values.
///
/// The constructor does not validate; `is_valid_filtration` checks the
/// faces-before-cofaces and monotone-value conditions.
class FilteredComplex {
 public:
  FilteredComplex() = default;
  FilteredComplex(std::vector<FilteredSimplex> simplices, int max_dimension)
      : simplices_(std::move(simplices)), max_dimension_(max_dimension) {}

  std::span<const FilteredSimplex> simplices() const { return simplices_; }
  std::size_t size() const { return simplices_.size(); }
  int max_dimension() const { return max_dimension_; }

  bool is_valid_filtration() const;

 private:
  std::vector<FilteredSimplex> simplices_;
  int max_dimension_ = 0;
};

/// Every clique of `graph` with at most max_dim + 1 vertices, each exactly once.
std::vector<Simplex> clique_expand(const WeightedGraph& graph, int max_dim);

/// Clique complex under g(sigma) = max over vertices, ordered by
/// (value, dimension, vertex list).
FilteredComplex lower_star_filtration(const WeightedGraph& graph, int max_dim);

/// Simplices with filtration value <= t, in filtration order.
std::vector<Simplex> sublevel_complex(const FilteredComplex& fc, double t);

}  // namespace topovel
