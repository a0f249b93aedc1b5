#include "topovel/day_graph.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <queue>

namespace topovel {

WeightedGraph build_day_graph(std::span<const Transaction> transactions, std::size_t top_rank) {
  struct Activity {
    std::size_t count = 0;
    double total = 0.0;
  };
  std::map<std::string, Activity> activity;
  for (const auto& t : transactions) {
    for (const auto* id : {&t.src, &t.dst}) {
      auto& a = activity[*id];
      ++a.count;
      a.total += t.amount;
    }
  }

  std::vector<const std::string*> ranked;
  ranked.reserve(activity.size());
  for (const auto& [id, a] : activity) ranked.push_back(&id);
  std::stable_sort(ranked.begin(), ranked.end(), [&](const std::string* x, const std::string* y) {
    const auto& ax = activity.at(*x);
    const auto& ay = activity.at(*y);
    if (ax.count != ay.count) return ax.count > ay.count;
    if (ax.total != ay.total) return ax.total > ay.total;
    return *x < *y;
  });
  if (ranked.size() > top_rank) ranked.resize(top_rank);
  std::sort(ranked.begin(), ranked.end(), [](const std::string* x, const std::string* y) { return *x < *y; });

  WeightedGraph graph;
  std::map<std::string, Vertex> index;
  for (const auto* id : ranked) {
    const auto& a = activity.at(*id);
    index.emplace(*id, graph.add_node(a.total / static_cast<double>(a.count), *id));
  }
  for (const auto& t : transactions) {
    const auto u = index.find(t.src);
    const auto v = index.find(t.dst);
    if (u == index.end() || v == index.end() || u->second == v->second) continue;
    if (!graph.has_edge(u->second, v->second)) graph.add_edge(u->second, v->second);
  }
  return graph;
}

namespace {

constexpr std::size_t kUnreached = std::numeric_limits<std::size_t>::max();

std::vector<std::size_t> bfs_distances(const WeightedGraph& graph, Vertex source) {
  std::vector<std::size_t> dist(graph.size(), kUnreached);
  std::queue<Vertex> frontier;
  dist[source] = 0;
  frontier.push(source);
  while (!frontier.empty()) {
    const Vertex v = frontier.front();
    frontier.pop();
    for (Vertex w : graph.neighbors(v)) {
      if (dist[w] != kUnreached) continue;
      dist[w] = dist[v] + 1;
      frontier.push(w);
    }
  }
  return dist;
}

}  // namespace

std::vector<double> betweenness_centrality(const WeightedGraph& graph) {
  const std::size_t n = graph.size();
  std::vector<double> centrality(n, 0.0);
  std::vector<double> sigma(n), delta(n);
  std::vector<std::size_t> dist(n);
  std::vector<Vertex> order;
  order.reserve(n);
  for (Vertex s = 0; s < n; ++s) {
    std::fill(sigma.begin(), sigma.end(), 0.0);
    std::fill(delta.begin(), delta.end(), 0.0);
    std::fill(dist.begin(), dist.end(), kUnreached);
    order.clear();
    sigma[s] = 1.0;
    dist[s] = 0;
    std::queue<Vertex> frontier;
    frontier.push(s);
    while (!frontier.empty()) {
      const Vertex v = frontier.front();
      frontier.pop();
      order.push_back(v);
      for (Vertex w : graph.neighbors(v)) {
        if (dist[w] == kUnreached) {
          dist[w] = dist[v] + 1;
          frontier.push(w);
        }
        if (dist[w] == dist[v] + 1) sigma[w] += sigma[v];
      }
    }
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      const Vertex w = *it;
      for (Vertex v : graph.neighbors(w))
        if (dist[v] + 1 == dist[w]) delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
      if (w != s) centrality[w] += delta[w];
    }
  }
  // Each unordered pair was counted from both ends.
  const double pairs = n > 2 ? static_cast<double>((n - 1) * (n - 2)) : 0.0;
  for (auto& c : centrality) c = pairs > 0.0 ? c / pairs : 0.0;
  return centrality;
}

BaselineFeatures baseline_features(const WeightedGraph& graph) {
  BaselineFeatures out{0.0, 0.0, 0.0, 0.0};
  const std::size_t n = graph.size();
  if (n < 2) return out;
  const double denom = static_cast<double>(n - 1);

  double degree = 0.0, closeness = 0.0, clustering = 0.0;
  for (Vertex v = 0; v < n; ++v) {
    const auto nb = graph.neighbors(v);
    degree += static_cast<double>(nb.size()) / denom;

    double harmonic = 0.0;
    for (std::size_t d : bfs_distances(graph, v))
      if (d != kUnreached && d > 0) harmonic += 1.0 / static_cast<double>(d);
    closeness += harmonic / denom;

    if (nb.size() >= 2) {
      std::size_t links = 0;
      for (std::size_t i = 0; i < nb.size(); ++i)
        for (std::size_t j = i + 1; j < nb.size(); ++j)
          if (graph.has_edge(nb[i], nb[j])) ++links;
      const double possible = static_cast<double>(nb.size() * (nb.size() - 1)) / 2.0;
      clustering += static_cast<double>(links) / possible;
    }
  }
  double betweenness = 0.0;
  for (double b : betweenness_centrality(graph)) betweenness += b;

  const auto count = static_cast<double>(n);
  out = {degree / count, closeness / count, betweenness / count, clustering / count};
  return out;
}

}  // namespace topovel
