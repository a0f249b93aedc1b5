#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "oracles.hpp"
#include "topovel/persistence.hpp"
#include "topovel/random.hpp"

using namespace topovel;

namespace {

WeightedGraph to_graph(const oracle::Graph& g) {
  WeightedGraph out(g.weight);
  for (auto [a, b] : g.edges) out.add_edge(static_cast<Vertex>(a), static_cast<Vertex>(b));
  return out;
}

WeightedGraph path_abc() {
  WeightedGraph g({1.0, 3.0, 2.0});
  g.add_edge(0, 1);
  g.add_edge(1, 2);
  return g;
}

std::vector<PersistencePair> finite_pairs(const PersistenceDiagram& d) {
  std::vector<PersistencePair> out;
  for (const auto& p : d.sorted_pairs())
    if (!p.is_essential()) out.push_back(p);
  return out;
}

std::size_t essential_count(const PersistenceDiagram& d) {
  return static_cast<std::size_t>(
      std::count_if(d.pairs.begin(), d.pairs.end(), [](const PersistencePair& p) { return p.is_essential(); }));
}

}  // namespace

TEST(Persistence, PathExample) {
  const auto fc = lower_star_filtration(path_abc(), 2);
  const auto diagrams = compute_diagrams(fc, 1);
  ASSERT_EQ(diagrams.size(), 2u);
  const auto finite = finite_pairs(diagrams[0]);
  ASSERT_EQ(finite.size(), 2u);
  // The edge ab at 3 merges b (born 3) immediately: a zero-persistence pair.
  EXPECT_EQ(finite[0], (PersistencePair{2.0, 3.0}));
  EXPECT_EQ(finite[1], (PersistencePair{3.0, 3.0}));
  ASSERT_EQ(essential_count(diagrams[0]), 1u);
  EXPECT_EQ(diagrams[0].sorted_pairs().front().birth, 1.0);
  EXPECT_TRUE(diagrams[1].empty());

  const auto cleaned = finalize_diagram(diagrams[0], {.cap = std::nullopt, .discard_zero_persistence = true});
  ASSERT_EQ(cleaned.size(), 1u);
  EXPECT_EQ(cleaned.pairs[0], (PersistencePair{2.0, 3.0}));
}

TEST(Persistence, EqualWeightTriangle) {
  WeightedGraph g({4.0, 4.0, 4.0});
  g.add_edge(0, 1);
  g.add_edge(1, 2);
  g.add_edge(0, 2);
  const auto diagrams = compute_diagrams(lower_star_filtration(g, 2), 1);
  const auto d0 = diagrams[0].sorted_pairs();
  ASSERT_EQ(d0.size(), 3u);
  EXPECT_EQ(d0[0], (PersistencePair{4.0, 4.0}));
  EXPECT_EQ(d0[1], (PersistencePair{4.0, 4.0}));
  EXPECT_EQ(d0[2].birth, 4.0);
  EXPECT_TRUE(d0[2].is_essential());
  ASSERT_EQ(diagrams[1].size(), 1u);
  EXPECT_EQ(diagrams[1].pairs[0], (PersistencePair{4.0, 4.0}));
}

TEST(Persistence, EmptyGraph) {
  const auto diagrams = compute_diagrams(FilteredComplex({}, 2), 1);
  ASSERT_EQ(diagrams.size(), 2u);
  EXPECT_TRUE(diagrams[0].empty());
  EXPECT_TRUE(diagrams[1].empty());
}

TEST(Persistence, SquareHasOneLoop) {
  WeightedGraph g({0.0, 1.0, 2.0, 3.0});
  g.add_edge(0, 1);
  g.add_edge(1, 2);
  g.add_edge(2, 3);
  g.add_edge(0, 3);
  const auto diagrams = compute_diagrams(lower_star_filtration(g, 2), 1);
  ASSERT_EQ(diagrams[1].size(), 1u);
  EXPECT_EQ(diagrams[1].pairs[0].birth, 3.0);
  EXPECT_TRUE(diagrams[1].pairs[0].is_essential());
}

TEST(Persistence, RejectsThinOrInvalidComplex) {
  const auto fc = lower_star_filtration(path_abc(), 1);
  EXPECT_THROW(compute_diagrams(fc, 1), std::invalid_argument);
  FilteredComplex bad({{Simplex{0, 1}, 1.0}, {Simplex{0}, 1.0}, {Simplex{1}, 1.0}}, 2);
  EXPECT_THROW(compute_diagrams(bad, 1), std::invalid_argument);
}

TEST(Persistence, DiagramDimensionsAreTagged) {
  const auto diagrams = compute_diagrams(lower_star_filtration(path_abc(), 3), 2);
  for (int k = 0; k < 3; ++k) EXPECT_EQ(diagrams[static_cast<std::size_t>(k)].dimension, k);
}

TEST(BettiAt, PathExample) {
  const auto fc = lower_star_filtration(path_abc(), 2);
  EXPECT_EQ(betti_at(fc, 1.5, 0), 1);
  EXPECT_EQ(betti_at(fc, 2.5, 0), 2);
  EXPECT_EQ(betti_at(fc, 0.5, 0), 0);
  EXPECT_EQ(betti_at(fc, 0.5, 1), 0);
  EXPECT_EQ(betti_at(fc, 100.0, 0), 1);
}

TEST(BettiAt, AboveAllValuesCountsComponents) {
  WeightedGraph g({0.1, 0.2, 0.3, 0.4, 0.5});
  g.add_edge(0, 1);
  g.add_edge(2, 3);
  const auto fc = lower_star_filtration(g, 2);
  EXPECT_EQ(betti_at(fc, 10.0, 0), 3);
}

TEST(BettiAt, MatchesBruteForceOracle) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    Rng rng(seed);
    const int n = 3 + static_cast<int>(uniform_int(rng, 0, 9));
    const double p = uniform(rng, 0.3, 0.7);
    const auto g = oracle::random_graph(seed * 31 + 7, n, p, seed % 3 == 0);
    const auto fc = lower_star_filtration(to_graph(g), 2);
    const auto diagrams = compute_diagrams(fc, 1);
    std::set<double> values(g.weight.begin(), g.weight.end());
    for (double t : values) {
      EXPECT_EQ(betti_at(diagrams[0], t), oracle::betti0(g, t)) << "seed " << seed << " t " << t;
      EXPECT_EQ(betti_at(diagrams[1], t), oracle::betti1(g, t)) << "seed " << seed << " t " << t;
    }
  }
}

TEST(Persistence, PairingCountConservation) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto g = oracle::random_graph(seed, 10, 0.55);
    const auto fc = lower_star_filtration(to_graph(g), 3);
    const auto diagrams = compute_diagrams(fc, 2);
    std::array<std::size_t, 4> simplices{};
    for (const auto& fs : fc.simplices()) ++simplices[static_cast<std::size_t>(fs.simplex.dimension())];
    EXPECT_EQ(simplices[0], diagrams[0].size());
    for (std::size_t k = 1; k <= 2; ++k)
      EXPECT_EQ(simplices[k], diagrams[k].size() + finite_pairs(diagrams[k - 1]).size());
    for (const auto& d : diagrams)
      for (const auto& p : d.pairs) EXPECT_LE(p.birth, p.death);
  }
}

TEST(Persistence, UnionFindMatchesReductionExactly) {
  for (std::uint64_t seed = 0; seed < 80; ++seed) {
    const auto g = oracle::random_graph(seed, 12, 0.4, seed % 2 == 1);
    const auto fc = lower_star_filtration(to_graph(g), 1);
    const auto reduced = compute_diagrams(fc, 0)[0];
    const auto fast = zero_dim_diagram(fc);
    EXPECT_EQ(reduced.pairs, fast.pairs) << "seed " << seed;
  }
}

TEST(Persistence, InvariantUnderRelabeling) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto g = oracle::random_graph(seed, 10, 0.5, true);
    std::vector<int> perm(g.weight.size());
    std::iota(perm.begin(), perm.end(), 0);
    Rng rng(seed);
    shuffle(perm.begin(), perm.end(), rng);
    oracle::Graph h;
    h.weight.resize(g.weight.size());
    for (std::size_t v = 0; v < g.weight.size(); ++v) h.weight[static_cast<std::size_t>(perm[v])] = g.weight[v];
    for (auto [a, b] : g.edges) h.edges.emplace_back(perm[static_cast<std::size_t>(a)], perm[static_cast<std::size_t>(b)]);
    const auto da = compute_diagrams(lower_star_filtration(to_graph(g), 2), 1);
    const auto db = compute_diagrams(lower_star_filtration(to_graph(h), 2), 1);
    for (std::size_t k = 0; k < 2; ++k) EXPECT_EQ(da[k].sorted_pairs(), db[k].sorted_pairs());
  }
}

TEST(Finalize, CapEssential) {
  const auto raw = make_diagram({{1.0, kEssential}});
  const auto capped = finalize_diagram(raw, {.cap = 3.0});
  ASSERT_EQ(capped.size(), 1u);
  EXPECT_EQ(capped.pairs[0], (PersistencePair{1.0, 3.0}));
  EXPECT_EQ(capped.policy.handling, EssentialHandling::kCapped);
  EXPECT_EQ(capped.policy.cap, 3.0);
  EXPECT_FALSE(capped.has_essential());
}

TEST(Finalize, DiscardZeroPersistence) {
  const auto out = finalize_diagram(make_diagram({{2.0, 2.0}, {2.0, 3.0}}), {.cap = 10.0});
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out.pairs[0], (PersistencePair{2.0, 3.0}));
  EXPECT_TRUE(out.policy.zero_persistence_discarded);
  const auto kept = finalize_diagram(make_diagram({{2.0, 2.0}, {2.0, 3.0}}),
                                     {.cap = 10.0, .discard_zero_persistence = false});
  EXPECT_EQ(kept.size(), 2u);
}

TEST(Finalize, DropEssential) {
  const auto out = finalize_diagram(make_diagram({{1.0, kEssential}, {2.0, 3.0}}), {.cap = std::nullopt});
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out.pairs[0], (PersistencePair{2.0, 3.0}));
  EXPECT_EQ(out.policy.handling, EssentialHandling::kDropped);
}

TEST(Finalize, CapBelowBirthIsRejected) {
  EXPECT_THROW(finalize_diagram(make_diagram({{5.0, kEssential}}), {.cap = 3.0}), std::invalid_argument);
}

TEST(Finalize, CappingAtBirthGivesZeroPersistence) {
  const auto out = finalize_diagram(make_diagram({{3.0, kEssential}}), {.cap = 3.0});
  EXPECT_TRUE(out.empty());
}

TEST(DiagramCsv, RoundTrip) {
  std::vector<PersistenceDiagram> diagrams{make_diagram({{0.1, 0.4}, {0.2, kEssential}}, 0),
                                           make_diagram({{0.3333333333333333, 0.9}}, 1)};
  std::stringstream buffer;
  write_diagrams_csv(buffer, diagrams);
  EXPECT_NE(buffer.str().find("dimension,birth,death"), std::string::npos);
  EXPECT_NE(buffer.str().find("inf"), std::string::npos);
  const auto back = read_diagrams_csv(buffer);
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back[0].sorted_pairs(), diagrams[0].sorted_pairs());
  EXPECT_EQ(back[1].sorted_pairs(), diagrams[1].sorted_pairs());
  EXPECT_EQ(back[1].dimension, 1);
}

TEST(DiagramCsv, RejectsMalformedInput) {
  std::stringstream no_header("0,1,2\n");
  EXPECT_THROW(read_diagrams_csv(no_header), std::runtime_error);
  std::stringstream bad_row("dimension,birth,death\n0,abc,2\n");
  EXPECT_THROW(read_diagrams_csv(bad_row), std::runtime_error);
  std::stringstream inverted("dimension,birth,death\n0,3,2\n");
  EXPECT_THROW(read_diagrams_csv(inverted), std::runtime_error);
}
