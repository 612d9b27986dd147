#include <gtest/gtest.h>

#include <random>
#include <set>

#include "domino/constructions.hpp"
#include "domino/matching.hpp"
#include "naive_oracle.hpp"

namespace domino {
namespace {

std::set<oracle::PairSet> as_pairs(const Graph& g, const MatchingStore& s) {
  std::set<oracle::PairSet> out;
  for (const auto& m : s) {
    oracle::PairSet p;
    m.bits.for_each([&](int e) { p.insert({g.edge(e).u, g.edge(e).v}); });
    out.insert(p);
  }
  return out;
}

TEST(Enumerate, TorusFourByFour) { EXPECT_EQ(enumerate_perfect_matchings(paper_torus(4, 4)).size(), 272u); }

TEST(Enumerate, UnitSquare) {
  auto g = build_grid({TopologyKind::Rectangle, 2, 2});
  auto s = enumerate_perfect_matchings(g);
  ASSERT_EQ(s.size(), 2u);
  EXPECT_EQ(count_horizontal(g, s[0]) + count_horizontal(g, s[1]), 2);
  EXPECT_NE(count_horizontal(g, s[0]), count_horizontal(g, s[1]));
}

TEST(Enumerate, TorusThreeByFourMatchesOracle) {
  // 50 = |PM(T(3,4))| from the naive oracle, computed before the engine existed.
  auto g = paper_torus(3, 4);
  auto s = enumerate_perfect_matchings(g);
  EXPECT_EQ(s.size(), 50u);
  EXPECT_EQ(as_pairs(g, s), oracle::all_matchings(oracle::torus(3, 4)));
}

TEST(Enumerate, LimitStopsEarly) {
  auto g = paper_torus(4, 4);
  EXPECT_EQ(enumerate_perfect_matchings(g, 5).size(), 5u);
  EXPECT_EQ(enumerate_perfect_matchings(g, 0).size(), 0u);
  auto full = enumerate_perfect_matchings(g);
  auto part = enumerate_perfect_matchings(g, 7);
  for (std::size_t i = 0; i < part.size(); ++i) EXPECT_EQ(part[i], full[i]);
}

TEST(Enumerate, OddVertexCountHasNone) {
  EXPECT_TRUE(enumerate_perfect_matchings(paper_torus(3, 3)).empty());
  EXPECT_TRUE(enumerate_perfect_matchings(build_grid({TopologyKind::Rectangle, 3, 3})).empty());
}

TEST(Enumerate, ParallelKeepsCanonicalOrder) {
  auto g = paper_cylinder(3, 5);
  auto a = enumerate_perfect_matchings(g);
  auto b = enumerate_perfect_matchings_parallel(g, 3);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i], b[i]);
}

// Completeness and duplicate-freeness against the oracle on a sweep of shapes.
class OracleSweep : public ::testing::TestWithParam<Topology> {};

TEST_P(OracleSweep, SameMatchingSet) {
  auto t = GetParam();
  auto g = build_grid(t);
  auto s = enumerate_perfect_matchings(g);
  auto ref = oracle::all_matchings(oracle::make_grid(t.vrows, t.vcols, t.wraps_rows(), t.wraps_columns()));
  auto mine = as_pairs(g, s);
  EXPECT_EQ(mine.size(), s.size());
  EXPECT_EQ(mine, ref);
  for (const auto& m : s) EXPECT_TRUE(verify_perfect(g, m));
}

INSTANTIATE_TEST_SUITE_P(Shapes, OracleSweep,
                         ::testing::Values(Topology{TopologyKind::Torus, 3, 4}, Topology{TopologyKind::Torus, 4, 4},
                                           Topology{TopologyKind::Torus, 3, 6}, Topology{TopologyKind::Torus, 4, 3},
                                           Topology{TopologyKind::Cylinder, 2, 3}, Topology{TopologyKind::Cylinder, 4, 3},
                                           Topology{TopologyKind::Cylinder, 3, 4}, Topology{TopologyKind::Cylinder, 4, 6},
                                           Topology{TopologyKind::Rectangle, 4, 4}, Topology{TopologyKind::Rectangle, 3, 6}));

TEST(VerifyPerfect, CanonicalAndBroken) {
  auto g = paper_torus(3, 4);
  auto [m1, m2] = canonical_matchings(g);
  EXPECT_TRUE(verify_perfect(g, m1));
  EXPECT_FALSE(verify_perfect(g, Matching(EdgeSet{}, g.id())));
  Matching missing = m1;
  missing.bits.reset(missing.bits.find_first());
  EXPECT_FALSE(verify_perfect(g, missing));
  Matching extra = m1;
  extra.bits.set(static_cast<std::size_t>(g.horiz_class(2)[0]));
  EXPECT_FALSE(verify_perfect(g, extra));
  EXPECT_THROW(verify_perfect(paper_torus(3, 6), m1), GraphMismatch);
}

TEST(CountHorizontal, Values) {
  auto g = paper_torus(5, 8);  // n = 2, m = 4
  auto [m1, m2] = canonical_matchings(g);
  EXPECT_EQ(count_horizontal(g, m1), 5 * 4);

  auto c = paper_cylinder(3, 4);
  EdgeSet vertical;
  for (int col = 1; col <= 4; ++col)
    for (int r = 1; r <= 4; r += 2) vertical.set(static_cast<std::size_t>(c.find_edge(c.vertex(col, r), c.vertex(col, r + 1))));
  Matching mv(vertical, c.id());
  ASSERT_TRUE(verify_perfect(c, mv));
  EXPECT_EQ(count_horizontal(c, mv), 0);
}

TEST(CountHorizontal, AtLeastMOnOddEvenTorus) {
  auto g = paper_torus(3, 4);
  for (const auto& m : enumerate_perfect_matchings(g)) EXPECT_GE(count_horizontal(g, m), 2);
}

// Each column cycle of T(2n+1, 2m) has an odd number of matched cross edges.
TEST(ColumnParity, OddCrossEdgesPerColumn) {
  auto g = paper_torus(3, 4);
  for (const auto& m : enumerate_perfect_matchings(g)) {
    for (int j = 1; j <= g.vcols(); ++j) {
      int cross = 0;
      for (int v : g.column_cycle(j))
        for (int e : g.incident(v))
          if (m.contains(e) && g.edge(e).kind == EdgeKind::Horizontal) ++cross;
      EXPECT_EQ(cross % 2, 1);
    }
  }
}

TEST(Elementary, Paths) {
  auto p2 = Graph::from_edges(2, {{0, 1}});
  EXPECT_TRUE(is_elementary(p2));
  EXPECT_TRUE(has_unique_pm(p2));
  auto p4 = Graph::from_edges(4, {{0, 1}, {1, 2}, {2, 3}});
  EXPECT_FALSE(is_elementary(p4));
  EXPECT_TRUE(has_unique_pm(p4));
  auto disconnected = Graph::from_edges(4, {{0, 1}, {2, 3}});
  EXPECT_FALSE(is_elementary(disconnected));
}

TEST(Elementary, PrismAgreesWithOracleCensus) {
  // Oracle: all 9 edges of the prism over a triangle are allowed.
  auto g = build_grid({TopologyKind::Cylinder, 2, 3});
  auto ref = oracle::allowed_edges(oracle::cylinder(2, 3));
  EXPECT_EQ(static_cast<int>(ref.size()), oracle::edge_count(oracle::cylinder(2, 3)));
  EXPECT_EQ(static_cast<int>(allowed_edges(g).count()), g.edge_count());
  EXPECT_TRUE(is_elementary(g));
  EXPECT_FALSE(has_unique_pm(g));
}

TEST(Store, DedupAndLookup) {
  auto g = build_grid({TopologyKind::Rectangle, 2, 2});
  auto s = enumerate_perfect_matchings(g);
  MatchingStore copy(g.id());
  for (const auto& m : s) copy.insert(m.bits);
  EXPECT_EQ(copy.insert(s[0].bits), 0);
  EXPECT_EQ(copy.size(), 2u);
  EXPECT_EQ(copy.find(s[1]), 1);
  EXPECT_FALSE(copy.find(EdgeSet{}).has_value());
  EXPECT_THROW(copy.find(Matching(s[0].bits, 12345)), GraphMismatch);
}

TEST(BitVec, FingerprintSeparatesAndScans) {
  std::mt19937_64 rng(7);
  std::set<std::uint64_t> fps;
  for (int k = 0; k < 2000; ++k) {
    EdgeSet s;
    for (int i = 0; i < 8; ++i) s.set(rng() % kMaxEdges);
    auto idx = s.indices();
    EXPECT_EQ(idx.size(), s.count());
    for (std::size_t i = 1; i < idx.size(); ++i) EXPECT_LT(idx[i - 1], idx[i]);
    fps.insert(s.fingerprint());
  }
  EXPECT_GT(fps.size(), 1990u);
}

}  // namespace
}  // namespace domino
