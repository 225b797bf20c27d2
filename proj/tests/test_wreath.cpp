#include <gtest/gtest.h>

#include "oracles.hpp"
#include "qmg/generators.hpp"
#include "qmg/recognition.hpp"
#include "qmg/wreath.hpp"

using namespace qmg;

namespace {

std::vector<Graph> hosts() { return {complete_graph(1), complete_graph(2), path_graph(3), cycle_graph(4)}; }

}  // namespace

TEST(Convex, MatchesBruteForce) {
  std::vector<Graph> graphs = hosts();
  graphs.push_back(hypercube(3));
  graphs.push_back(Graph(6, {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {1, 4}, {4, 5}, {5, 2}}));
  for (std::uint64_t seed = 1; seed <= 15; ++seed) {
    auto g = random_quasi_median(seed, 3, 2);
    if (g.size() <= 14) graphs.push_back(g);
  }
  for (const auto& g : graphs) {
    auto got = enumerate_convex_subgraphs(g);
    auto expect = oracle::convex_subsets(g);
    std::sort(expect.begin(), expect.end(), [](const auto& a, const auto& b) {
      return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
    ASSERT_EQ(got.size(), expect.size());
    for (std::size_t i = 0; i < got.size(); ++i) ASSERT_EQ(got[i].members(), expect[i]);
  }
}

TEST(Convex, FrozenCounts) {
  std::vector<std::size_t> counts;
  for (const auto& g : hosts()) counts.push_back(enumerate_convex_subgraphs(g).size());
  EXPECT_EQ(counts, (std::vector<std::size_t>{1, 3, 6, 9}));
  EXPECT_THROW(enumerate_convex_subgraphs(complete_graph(3)), Error);
  EXPECT_THROW(enumerate_convex_subgraphs(hypercube(4), 20), Error);
}

TEST(Wreath, TestMatrixIsQuasiMedian) {
  const std::vector<std::size_t> convex{1, 3, 6, 9};
  const auto hs = hosts();
  for (std::size_t h = 0; h < hs.size(); ++h)
    for (std::uint32_t q : {2u, 3u}) {
      WreathConfig cfg{hs[h], VertexSet::full(hs[h].size()), FiniteGroup::cyclic(q)};
      auto w = build_wreath_graph(cfg);
      std::size_t expected = convex[h];
      for (std::size_t i = 0; i < hs[h].size(); ++i) expected *= q;
      ASSERT_EQ(w.graph.size(), expected);
      EXPECT_TRUE(is_quasi_median(w.graph).positive()) << h << " " << q;
    }
}

TEST(Wreath, EdgeGraphMatchesPairwiseTest) {
  for (const auto& host : {complete_graph(2), path_graph(3)}) {
    WreathConfig cfg{host, VertexSet::full(host.size()), FiniteGroup::cyclic(2)};
    auto w = build_wreath_graph(cfg);
    auto d = compute_hyperplanes(host);
    for (Vertex a = 0; a < w.graph.size(); ++a)
      for (Vertex b = a + 1; b < w.graph.size(); ++b)
        ASSERT_EQ(w.graph.adjacent(a, b), wreath_edge(cfg, d, w.wreaths[a], w.wreaths[b]));
  }
}

TEST(Wreath, SmallestNontrivialInstance) {
  WreathConfig cfg{complete_graph(2), VertexSet::full(2), FiniteGroup::cyclic(2)};
  auto w = build_wreath_graph(cfg);
  ASSERT_EQ(w.graph.size(), 12u);
  // Supports {0}, {1}, {0,1}: moves {0}-{0,1} and {1}-{0,1} for each of the
  // 4 colourings, and recolourings: 1 lamp each in the singletons, 2 in the
  // edge.
  EXPECT_EQ(w.graph.edge_count(), 2u * 4 + (2u + 2u + 4u));
  EXPECT_TRUE(w.disagreements.empty());
}

TEST(Wreath, MoveTests) {
  auto p3 = path_graph(3);
  auto d = compute_hyperplanes(p3);
  auto t = move_test(d, VertexSet(3, {0}), VertexSet(3, {1, 2}));
  EXPECT_TRUE(t.incidence);
  EXPECT_FALSE(t.transform);
  t = move_test(d, VertexSet(3, {1}), VertexSet(3, {1, 2}));
  EXPECT_TRUE(t.incidence && t.transform);
  t = move_test(d, VertexSet(3, {0}), VertexSet(3, {0, 1, 2}));
  EXPECT_FALSE(t.incidence);

  WreathConfig cfg{p3, VertexSet::full(3), FiniteGroup::cyclic(2)};
  auto w = build_wreath_graph(cfg);
  EXPECT_FALSE(w.disagreements.empty());
  for (auto [a, b] : w.disagreements) {
    auto r = move_test(d, w.convex_sets[a], w.convex_sets[b]);
    EXPECT_TRUE(r.incidence && !r.transform);
  }
}

TEST(Wreath, RecolourOnlyInsideSupport) {
  auto p3 = path_graph(3);
  WreathConfig cfg{p3, VertexSet::full(3), FiniteGroup::cyclic(3)};
  auto d = compute_hyperplanes(p3);
  Wreath a{VertexSet(3, {0}), {{2, 1}}}, b{VertexSet(3, {0}), {{2, 2}}}, c{VertexSet(3, {0}), {{0, 1}, {2, 1}}};
  EXPECT_FALSE(wreath_edge(cfg, d, a, b));
  EXPECT_TRUE(wreath_edge(cfg, d, a, c));
  Wreath moved{VertexSet(3, {0, 1}), {{2, 1}}};
  EXPECT_TRUE(wreath_edge(cfg, d, a, moved));
  EXPECT_FALSE(wreath_edge(cfg, d, a, a));
}

TEST(Wreath, OmegaSubsetAndTrivialGroup) {
  WreathConfig cfg{path_graph(3), VertexSet(3, {1}), FiniteGroup::cyclic(2)};
  auto w = build_wreath_graph(cfg);
  EXPECT_EQ(w.graph.size(), 6u * 2);
  EXPECT_TRUE(is_quasi_median(w.graph).positive());
  WreathConfig trivial{cycle_graph(4), VertexSet::full(4), FiniteGroup::cyclic(1)};
  auto t = build_wreath_graph(trivial);
  EXPECT_EQ(t.graph.size(), 9u);
  EXPECT_TRUE(is_quasi_median(t.graph).positive());
}

TEST(Wreath, Errors) {
  try {
    build_wreath_graph({complete_graph(3), VertexSet::full(3)});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::NotMedian);
  }
  EXPECT_THROW(build_wreath_graph({path_graph(3), VertexSet(3)}), Error);
  EXPECT_THROW(build_wreath_graph({path_graph(3), VertexSet(2, {0})}), Error);
  try {
    build_wreath_graph({cycle_graph(4), VertexSet::full(4), FiniteGroup::cyclic(3)}, {kDefaultConvexCap, 700});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::CapExceeded);
  }
}
