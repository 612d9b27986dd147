#include <gtest/gtest.h>

#include <map>

#include "domino/constructions.hpp"
#include "domino/forcing.hpp"
#include "naive_oracle.hpp"

namespace domino {
namespace {

oracle::PairSet as_pairs(const Graph& g, const Matching& m) {
  oracle::PairSet p;
  m.bits.for_each([&](int e) { p.insert({g.edge(e).u, g.edge(e).v}); });
  return p;
}

oracle::NaiveGrid naive_of(const GridGraph& g) {
  const auto& t = g.topology();
  return oracle::make_grid(t.vrows, t.vcols, t.wraps_rows(), t.wraps_columns());
}

EdgeSet set_of(std::span<const int> v) {
  EdgeSet s;
  for (int e : v) s.set(static_cast<std::size_t>(e));
  return s;
}

TEST(IsForcingSet, WholeMatchingAndEmptySet) {
  auto g = build_grid({TopologyKind::Rectangle, 2, 2});
  auto store = enumerate_perfect_matchings(g);
  for (const auto& m : store) {
    auto all = m.edges();
    EXPECT_TRUE(is_forcing_set(g, m, all));
    EXPECT_FALSE(is_forcing_set(g, m, {}));
  }
  auto t = paper_torus(3, 4);
  for (const auto& m : enumerate_perfect_matchings(t)) EXPECT_TRUE(is_forcing_set(t, m, m.edges()));
}

TEST(IsForcingSet, RejectsNonSubset) {
  auto g = paper_torus(3, 4);
  auto [m1, m2] = canonical_matchings(g);
  auto foreign = m2.edges();
  EXPECT_THROW(is_forcing_set(g, m1, std::vector<int>{foreign[0]}), NotSubsetError);
}

TEST(IsForcingSet, MarkedConstructionOnT34) {
  auto g = paper_torus(3, 4);
  auto [m1, m2] = canonical_matchings(g);
  auto [ms, s] = marked_forcing_set(g, m1);
  EXPECT_TRUE(is_forcing_set(g, m1, s));
}

TEST(ForcingNumber, SmallValues) {
  auto sq = build_grid({TopologyKind::Rectangle, 2, 2});
  for (const auto& m : enumerate_perfect_matchings(sq)) EXPECT_EQ(forcing_number(sq, m).forcing_number, 1);

  auto t = paper_torus(3, 4);
  auto [m1, m2] = canonical_matchings(t);
  EXPECT_EQ(forcing_number(t, m1).forcing_number, 4);
  EXPECT_EQ(forcing_number(t, m2).forcing_number, 4);

  auto c = paper_cylinder(1, 5);
  int best = 1 << 20;
  for (const auto& m : enumerate_perfect_matchings(c)) best = std::min(best, forcing_number(c, m).forcing_number);
  EXPECT_EQ(best, 2);
}

TEST(ForcingNumber, ZeroIffUniquePerfectMatching) {
  // Generic graphs, no square hints: the search falls back to second-matching
  // discovery alone.
  auto p4 = Graph::from_edges(4, {{0, 1}, {1, 2}, {2, 3}});
  ForcingSolver s4(p4, {});
  auto only = enumerate_perfect_matchings(p4);
  ASSERT_EQ(only.size(), 1u);
  EXPECT_EQ(s4.solve(only[0]).forcing_number, 0);

  auto c4 = Graph::from_edges(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
  ForcingSolver sc(c4, {});
  for (const auto& m : enumerate_perfect_matchings(c4)) EXPECT_EQ(sc.solve(m).forcing_number, 1);

  for (auto g : {paper_torus(3, 4), paper_cylinder(3, 3), paper_cylinder(1, 6)}) {
    ASSERT_FALSE(has_unique_pm(g));
    for (const auto& m : enumerate_perfect_matchings(g)) EXPECT_GE(forcing_number(g, m).forcing_number, 1);
  }
}

// Exhaustive cross-check against the subset-search oracle, plus witness
// validity, witness minimality and lower-bound soundness.
class ForcingOracle : public ::testing::TestWithParam<Topology> {};

TEST_P(ForcingOracle, AgreesOnEveryMatching) {
  auto g = build_grid(GetParam());
  auto ng = naive_of(g);
  ForcingSolver solver(g);
  for (const auto& m : enumerate_perfect_matchings(g)) {
    auto r = solver.solve(m);
    EXPECT_EQ(r.forcing_number, oracle::forcing_number(ng, as_pairs(g, m)));
    EXPECT_EQ(static_cast<int>(r.witness.size()), r.forcing_number);
    EXPECT_LE(r.lower_bound, r.forcing_number);
    EXPECT_EQ(r.lower_bound, solver.alternating_square_packing(m));
    EXPECT_TRUE(solver.is_forcing_set(m.bits, set_of(r.witness)));
    for (std::size_t drop = 0; drop < r.witness.size(); ++drop) {
      auto smaller = r.witness;
      smaller.erase(smaller.begin() + static_cast<std::ptrdiff_t>(drop));
      EXPECT_FALSE(solver.is_forcing_set(m.bits, set_of(smaller)));
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Shapes, ForcingOracle,
                         ::testing::Values(Topology{TopologyKind::Torus, 3, 4}, Topology{TopologyKind::Torus, 4, 4},
                                           Topology{TopologyKind::Cylinder, 4, 3}, Topology{TopologyKind::Cylinder, 2, 5},
                                           Topology{TopologyKind::Cylinder, 2, 6}, Topology{TopologyKind::Cylinder, 3, 4},
                                           Topology{TopologyKind::Rectangle, 4, 4}, Topology{TopologyKind::Rectangle, 3, 4}));

TEST(Spectrum, CylindersWithGaps) {
  auto a = forcing_spectrum(paper_cylinder(1, 10));
  EXPECT_EQ(a.spectrum, (std::vector<int>{2, 4, 5}));
  EXPECT_FALSE(a.continuous);
  EXPECT_EQ(a.gaps(), std::vector<int>{3});
  auto b = forcing_spectrum(paper_cylinder(1, 12));
  EXPECT_EQ(b.spectrum, (std::vector<int>{2, 4, 5, 6}));
  EXPECT_EQ(b.gaps(), std::vector<int>{3});
}

TEST(Spectrum, C33FromOracle) {
  // Oracle census of C(3,3): 12 matchings force with 2, 6 with 3, 1 with 4.
  SpectrumOptions opt;
  opt.keep_per_matching = true;
  auto r = forcing_spectrum(paper_cylinder(3, 3), opt);
  EXPECT_EQ(r.spectrum, (std::vector<int>{2, 3, 4}));
  EXPECT_TRUE(r.continuous);
  std::map<int, int> hist;
  for (const auto& x : r.per_matching) ++hist[x.forcing_number];
  EXPECT_EQ(hist, (std::map<int, int>{{2, 12}, {3, 6}, {4, 1}}));
}

TEST(Spectrum, MaxForcingOnOddEvenTorusAndCylinder) {
  // (n+1)m
  EXPECT_EQ(forcing_spectrum(paper_torus(3, 4)).max_forcing, 4);
  EXPECT_EQ(forcing_spectrum(paper_torus(5, 4)).max_forcing, 6);
  EXPECT_EQ(forcing_spectrum(paper_torus(3, 6)).max_forcing, 6);
  EXPECT_EQ(forcing_spectrum(paper_cylinder(3, 3)).max_forcing, 4);
  EXPECT_EQ(forcing_spectrum(paper_cylinder(5, 3)).max_forcing, 6);
  for (auto g : {paper_torus(3, 4), paper_torus(5, 4), paper_cylinder(5, 3), paper_cylinder(3, 5)})
    EXPECT_TRUE(forcing_spectrum(g).continuous);
}

TEST(Spectrum, EvenTorusEndpoints) {
  // f(T(2m,2n)) = 2 min{m,n}, F(T(2m,2n)) = mn
  auto a = forcing_spectrum(paper_torus(4, 4));
  EXPECT_EQ(a.min_forcing, 4);
  EXPECT_EQ(a.max_forcing, 4);
  auto b = forcing_spectrum(paper_torus(4, 6));
  EXPECT_EQ(b.min_forcing, 4);
  EXPECT_EQ(b.max_forcing, 6);
}

TEST(Spectrum, ThreadCountDoesNotChangeResults) {
  SpectrumOptions one, four;
  one.keep_per_matching = four.keep_per_matching = true;
  four.threads = 4;
  auto a = forcing_spectrum(paper_cylinder(3, 5), one);
  auto b = forcing_spectrum(paper_cylinder(3, 5), four);
  ASSERT_EQ(a.per_matching.size(), b.per_matching.size());
  for (std::size_t i = 0; i < a.per_matching.size(); ++i) {
    EXPECT_EQ(a.per_matching[i].forcing_number, b.per_matching[i].forcing_number);
    EXPECT_EQ(a.per_matching[i].witness, b.per_matching[i].witness);
  }
}

TEST(Spectrum, BudgetMarksPartial) {
  SpectrumOptions opt;
  opt.budget_matchings = 10;
  auto r = forcing_spectrum(paper_torus(3, 6), opt);
  EXPECT_FALSE(r.authoritative);
  EXPECT_EQ(r.matchings, 10u);
  opt.budget_matchings = 0;
  EXPECT_THROW(forcing_spectrum(paper_torus(3, 6), opt), BudgetExceeded);
  EXPECT_THROW(forcing_spectrum(paper_torus(3, 3)), std::invalid_argument);
}

TEST(Lipschitz, FlipsMoveForcingByAtMostOne) {
  for (auto g : {build_grid({TopologyKind::Rectangle, 2, 2}), paper_torus(3, 4), paper_cylinder(3, 5)}) {
    auto store = enumerate_perfect_matchings(g);
    auto fg = build_flip_graph(g, store);
    auto res = forcing_numbers(g, store);
    EXPECT_TRUE(flip_lipschitz_check(fg, res));
  }
}

TEST(Lipschitz, DetectsViolation) {
  auto g = paper_torus(3, 4);
  auto store = enumerate_perfect_matchings(g);
  auto fg = build_flip_graph(g, store);
  auto res = forcing_numbers(g, store);
  res[0].forcing_number += 5;
  EXPECT_FALSE(flip_lipschitz_check(fg, res));
  res.pop_back();
  EXPECT_THROW(flip_lipschitz_check(fg, res), std::invalid_argument);
}

}  // namespace
}  // namespace domino
