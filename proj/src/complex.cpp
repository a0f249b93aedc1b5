#include "topovel/complex.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace topovel {

WeightedGraph::WeightedGraph(std::vector<double> node_weights,
                             std::vector<std::string> labels)
    : weights_(std::move(node_weights)),
      labels_(std::move(labels)),
      adjacency_(weights_.size()) {
  if (labels_.empty()) {
    labels_.reserve(weights_.size());
    for (std::size_t i = 0; i < weights_.size(); ++i) labels_.push_back(std::to_string(i));
  }
  if (labels_.size() != weights_.size())
    throw std::invalid_argument("WeightedGraph: label count does not match node count");
}

Vertex WeightedGraph::add_node(double weight, std::string label) {
  const auto v = static_cast<Vertex>(weights_.size());
  weights_.push_back(weight);
  labels_.push_back(label.empty() ? std::to_string(v) : std::move(label));
  adjacency_.emplace_back();
  return v;
}

bool WeightedGraph::has_edge(Vertex u, Vertex v) const {
  if (u >= size() || v >= size()) return false;
  const auto& nb = adjacency_[u];
  return std::binary_search(nb.begin(), nb.end(), v);
}

void WeightedGraph::add_edge(Vertex u, Vertex v) {
  if (u >= size() || v >= size())
    throw std::invalid_argument("WeightedGraph: edge endpoint is not a node");
  if (u == v) throw std::invalid_argument("WeightedGraph: self-loop");
  if (has_edge(u, v)) throw std::invalid_argument("WeightedGraph: duplicate edge");
  auto insert_sorted = [](std::vector<Vertex>& list, Vertex x) {
    list.insert(std::upper_bound(list.begin(), list.end(), x), x);
  };
  insert_sorted(adjacency_[u], v);
  insert_sorted(adjacency_[v], u);
  edges_.emplace_back(std::min(u, v), std::max(u, v));
}

Simplex::Simplex(std::vector<Vertex> vertices) : vertices_(std::move(vertices)) {
  if (vertices_.empty()) throw std::invalid_argument("Simplex: no vertices");
  std::sort(vertices_.begin(), vertices_.end());
  if (std::adjacent_find(vertices_.begin(), vertices_.end()) != vertices_.end())
    throw std::invalid_argument("Simplex: repeated vertex");
}

std::vector<Simplex> Simplex::facets() const {
  std::vector<Simplex> out;
  if (vertices_.size() < 2) return out;
  out.reserve(vertices_.size());
  for (std::size_t skip = 0; skip < vertices_.size(); ++skip) {
    Simplex face;
    face.vertices_.reserve(vertices_.size() - 1);
    for (std::size_t i = 0; i < vertices_.size(); ++i)
      if (i != skip) face.vertices_.push_back(vertices_[i]);
    out.push_back(std::move(face));
  }
  return out;
}

bool FilteredComplex::is_valid_filtration() const {
  std::map<Simplex, std::size_t> position;
  for (std::size_t i = 0; i < simplices_.size(); ++i) {
    const auto& [s, value] = simplices_[i];
    if (s.dimension() > max_dimension_) return false;
    if (i > 0 && value < simplices_[i - 1].value) return false;
    for (const auto& face : s.facets()) {
      if (!position.contains(face)) return false;
    }
    if (!position.emplace(s, i).second) return false;
  }
  return true;
}

namespace {

// Extends `clique` by common neighbours with larger index so each clique is
// produced once, from its smallest vertex upward.
void extend_cliques(const WeightedGraph& graph, std::vector<Vertex>& clique,
                    const std::vector<Vertex>& candidates, std::size_t max_size,
                    std::vector<Simplex>& out) {
  out.emplace_back(clique);
  if (clique.size() == max_size) return;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const Vertex v = candidates[i];
    std::vector<Vertex> next;
    const auto nb = graph.neighbors(v);
    std::set_intersection(candidates.begin() + static_cast<std::ptrdiff_t>(i) + 1,
                          candidates.end(), nb.begin(), nb.end(),
                          std::back_inserter(next));
    clique.push_back(v);
    extend_cliques(graph, clique, next, max_size, out);
    clique.pop_back();
  }
}

}  // namespace

std::vector<Simplex> clique_expand(const WeightedGraph& graph, int max_dim) {
  if (max_dim < 0) throw std::invalid_argument("clique_expand: max_dim must be >= 0");
  std::vector<Simplex> out;
  const auto max_size = static_cast<std::size_t>(max_dim) + 1;
  std::vector<Vertex> clique;
  for (Vertex v = 0; v < graph.size(); ++v) {
    std::vector<Vertex> candidates;
    for (Vertex u : graph.neighbors(v))
      if (u > v) candidates.push_back(u);
    clique.assign(1, v);
    extend_cliques(graph, clique, candidates, max_size, out);
  }
  return out;
}

FilteredComplex lower_star_filtration(const WeightedGraph& graph, int max_dim) {
  auto cliques = clique_expand(graph, max_dim);
  std::vector<FilteredSimplex> simplices;
  simplices.reserve(cliques.size());
  for (auto& s : cliques) {
    double value = -std::numeric_limits<double>::infinity();
    for (Vertex v : s.vertices()) value = std::max(value, graph.weight(v));
    simplices.push_back({std::move(s), value});
  }
  std::sort(simplices.begin(), simplices.end(),
            [](const FilteredSimplex& a, const FilteredSimplex& b) {
              if (a.value != b.value) return a.value < b.value;
              if (a.simplex.dimension() != b.simplex.dimension())
                return a.simplex.dimension() < b.simplex.dimension();
              return a.simplex < b.simplex;
            });
  return FilteredComplex(std::move(simplices), max_dim);
}

std::vector<Simplex> sublevel_complex(const FilteredComplex& fc, double t) {
  std::vector<Simplex> out;
  for (const auto& [s, value] : fc.simplices()) {
    if (value <= t) out.push_back(s);
  }
  return out;
}

}  // namespace topovel
