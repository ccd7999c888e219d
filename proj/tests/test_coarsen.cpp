#include <gtest/gtest.h>

#include <random>

#include "gcoh/coarsen.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace gcoh;
using fixture::deg;
using fixture::ideal;

namespace {

const DegreeGroup Z1 = DegreeGroup::free_group(1);

GroupEpimorphism sum_map() { return GroupEpimorphism(DegreeGroup::free_group(2), Z1, {{1, 1}}); }
GroupEpimorphism projection() { return GroupEpimorphism(DegreeGroup(1, {2}), Z1, {{1, 0}}); }

Degree h(Int v) { return Z1.make({v}); }

/// dim 1 exactly where both coordinates are <= -1.
HilbertTable top_cohomology_table(const DegreeWindow& w) {
  HilbertTable t(w);
  for (const auto& g : w) t.set(g, g.free[0] <= -1 && g.free[1] <= -1 ? 1 : 0);
  return t;
}

CoverageEvidence assumed() {
  CoverageEvidence ev;
  ev.assume_covered = true;
  return ev;
}

}  // namespace

TEST(CoarsenModule, IdentityLeavesPresentation) {
  auto R = fixture::fine_plane();
  auto psi = GroupEpimorphism::identity(R->group());
  auto Rc = coarsen_ring(*R, psi);
  auto M = GradedModule::quotient(R, ideal(2, {{2, 0}, {1, 1}}));
  auto Mc = coarsen_module(M, psi, Rc);
  EXPECT_EQ(Mc.generator_degrees(), M.generator_degrees());
  ASSERT_EQ(Mc.relations().size(), M.relations().size());
  for (std::size_t k = 0; k < M.relations().size(); ++k) {
    EXPECT_EQ(Mc.relations()[k].degree, M.relations()[k].degree);
    EXPECT_EQ(Mc.relations()[k].entries, M.relations()[k].entries);
  }
}

TEST(CoarsenModule, ShiftedFreeModuleAlongSum) {
  auto R = fixture::fine_plane();
  auto Rc = coarsen_ring(*R, sum_map());
  auto F = GradedModule::free_module(R, {deg(*R, {1, 0})});
  EXPECT_EQ(coarsen_module(F, sum_map(), Rc).generator_degrees(), std::vector<Degree>{h(1)});
  EXPECT_EQ(Rc->variable_degrees(), (std::vector<Degree>{h(1), h(1)}));
}

TEST(CoarsenModule, TorsionDroppedByProjection) {
  auto R = fixture::twisted_plane();
  auto Rc = coarsen_ring(*R, projection());
  EXPECT_EQ(Rc->variable_degrees()[0], h(1));
  EXPECT_THROW(coarsen_ring(*R, sum_map()), std::invalid_argument);
}

TEST(CoarsenTable, SumOfFineHilbertFunction) {
  auto R = fixture::fine_plane();
  auto Rc = coarsen_ring(*R, sum_map());
  auto M = GradedModule::ring_module(R);
  CoverageEvidence ev;
  ev.support_module = &M;
  ev.coarse = Rc;
  CoverageKind kind{};
  auto t = coarsen_table(M.hilbert(DegreeWindow::box(R->group(), 0, 2)), sum_map(), DegreeWindow::box(Z1, 2, 2), ev, &kind);
  EXPECT_EQ(t.at(h(2)), 3u);
  EXPECT_EQ(kind, CoverageKind::ModuleSupport);
}

TEST(CoarsenTable, IdentityIsUnchanged) {
  auto R = fixture::fine_plane();
  const auto w = DegreeWindow::box(R->group(), -2, 2);
  auto T = GradedModule::quotient(R, ideal(2, {{2, 1}})).hilbert(w);
  CoverageKind kind{};
  EXPECT_EQ(coarsen_table(T, GroupEpimorphism::identity(R->group()), w, {}, &kind), T);
  EXPECT_EQ(kind, CoverageKind::FiniteKernel);
}

TEST(CoarsenTable, TopCohomologyFiberSums) {
  const auto gw = DegreeWindow::box(DegreeGroup::free_group(2), -6, 1);
  auto t = coarsen_table(top_cohomology_table(gw), sum_map(), DegreeWindow::box(Z1, -5, 0), assumed());
  EXPECT_EQ(t.at(h(-3)), 2u);
  EXPECT_EQ(t.at(h(-2)), 1u);
  EXPECT_EQ(t.at(h(-1)), 0u);
}

TEST(CoarsenTable, RefusesUncertifiableFibers) {
  const auto gw = DegreeWindow::box(DegreeGroup::free_group(2), -6, 1);
  EXPECT_THROW(coarsen_table(top_cohomology_table(gw), sum_map(), DegreeWindow::box(Z1, -5, 0), {}), CoverageRefused);
  // Finite kernel, but the window misses half of every fiber.
  const DegreeGroup ZT(1, {2});
  HilbertTable half(DegreeWindow({ZT.make({0}, {0})}));
  EXPECT_THROW(coarsen_table(half, projection(), DegreeWindow::box(Z1, 0, 0), {}), CoverageRefused);
}

TEST(CoarsenTable, RefusesWhenSupportLeavesWindow) {
  auto R = fixture::fine_plane();
  auto Rc = coarsen_ring(*R, sum_map());
  auto M = GradedModule::ring_module(R);
  CoverageEvidence ev;
  ev.support_module = &M;
  ev.coarse = Rc;
  // (3,0) lies over h = 3 but outside [0,2]^2.
  EXPECT_THROW(coarsen_table(M.hilbert(DegreeWindow::box(R->group(), 0, 2)), sum_map(), DegreeWindow::box(Z1, 3, 3), ev),
               CoverageRefused);
}

TEST(HomComparison, FiniteTypeAlongSumIsEqual) {
  auto R = fixture::fine_plane();
  auto Rc = coarsen_ring(*R, sum_map());
  auto M = GradedModule::quotient(R, ideal(2, {{2, 0}, {0, 1}}));
  auto N = GradedModule::quotient(R, ideal(2, {{3, 0}, {1, 2}}));
  const auto gw = DegreeWindow::box(R->group(), -4, 4);
  for (Int v = -3; v <= 2; ++v) {
    const auto r = hom_comparison(M, N, sum_map(), Rc, h(v), gw);
    EXPECT_TRUE(r.equal) << v;
    EXPECT_TRUE(r.injective);
    EXPECT_TRUE(r.images_are_homs);
  }
}

TEST(HomComparison, IdentityIsEqual) {
  auto R = fixture::fine_plane();
  auto psi = GroupEpimorphism::identity(R->group());
  auto Rc = coarsen_ring(*R, psi);
  auto M = GradedModule::quotient(R, ideal(2, {{1, 1}}));
  auto N = GradedModule::ring_module(R);
  const auto gw = DegreeWindow::box(R->group(), -3, 3);
  for (const auto& g : DegreeWindow::box(R->group(), -1, 1)) {
    const auto r = hom_comparison(M, N, psi, Rc, g, gw);
    EXPECT_LE(r.fiber.size(), 1u);
    EXPECT_EQ(r.fine_sum, graded_hom(M, N, g).dim());
    EXPECT_TRUE(r.equal && r.injective && r.images_are_homs);
  }
}

TEST(HomComparison, RingToRingIsCoarseComponent) {
  auto R = fixture::twisted_plane();
  auto Rc = coarsen_ring(*R, projection());
  auto M = GradedModule::ring_module(R);
  for (Int v = 0; v <= 3; ++v) {
    const auto r = hom_comparison(M, M, projection(), Rc, h(v), DegreeWindow::box(R->group(), -1, 4));
    EXPECT_EQ(r.coarse_dim, static_cast<std::size_t>(v + 1));
    EXPECT_EQ(r.fine_sum, r.coarse_dim);
  }
}

TEST(HomComparison, RefusesSmallWindow) {
  auto R = fixture::fine_plane();
  auto Rc = coarsen_ring(*R, sum_map());
  auto M = GradedModule::ring_module(R);
  EXPECT_THROW(hom_comparison(M, M, sum_map(), Rc, h(3), DegreeWindow::box(R->group(), 0, 2)), CoverageRefused);
}

TEST(GammaIdentity, TruncatedLineUnderIdentity) {
  auto R = fixture::line();
  auto psi = GroupEpimorphism::identity(R->group());
  auto Rc = coarsen_ring(*R, psi);
  auto M = GradedModule::quotient(R, ideal(1, {{2}}));
  const auto w = DegreeWindow::box(R->group(), -1, 3);
  const auto rep = check_gamma_identity(ideal(1, {{1}}), M, psi, Rc, w, w, 10);
  EXPECT_TRUE(rep.holds);
  EXPECT_EQ(rep.dims.at(h(1)), (std::pair<std::size_t, std::size_t>{1, 1}));
}

TEST(GammaIdentity, PartialTorsionAlongSum) {
  auto R = fixture::fine_plane();
  auto Rc = coarsen_ring(*R, sum_map());
  auto M = GradedModule::quotient(R, ideal(2, {{2, 0}, {1, 1}}));
  const auto rep = check_gamma_identity(ideal(2, {{1, 0}, {0, 1}}), M, sum_map(), Rc, DegreeWindow::box(Z1, 0, 4),
                                        DegreeWindow::box(R->group(), 0, 4), 10);
  EXPECT_TRUE(rep.holds);
  EXPECT_TRUE(rep.mismatches.empty());
  // Only the class of x is torsion.
  EXPECT_EQ(rep.dims.at(h(1)), (std::pair<std::size_t, std::size_t>{1, 1}));
  EXPECT_EQ(rep.dims.at(h(2)), (std::pair<std::size_t, std::size_t>{0, 0}));
}

TEST(GammaIdentity, TorsionFreeIsZero) {
  auto R = fixture::twisted_plane();
  auto Rc = coarsen_ring(*R, projection());
  const auto rep = check_gamma_identity(ideal(2, {{1, 0}, {0, 1}}), GradedModule::ring_module(R), projection(), Rc,
                                        DegreeWindow::box(Z1, 0, 3), DegreeWindow::box(R->group(), 0, 3), 10);
  EXPECT_TRUE(rep.holds);
  for (const auto& [g, d] : rep.dims) EXPECT_EQ(d, (std::pair<std::size_t, std::size_t>{0, 0}));
}

TEST(CheckCommutation, FiniteKernelProjection) {
  auto R = fixture::twisted_plane();
  auto Rc = coarsen_ring(*R, projection());
  for (int i = 0; i <= 2; ++i) {
    const auto rep = check_commutation(i, ideal(2, {{1, 0}, {0, 1}}), GradedModule::ring_module(R), projection(), Rc,
                                       DegreeWindow::box(Z1, -4, 2), DegreeWindow::box(R->group(), -4, 2), Caps{});
    EXPECT_EQ(rep.verdict, Verdict::CommutesOnWindow) << i;
    EXPECT_EQ(rep.coverage, CoverageKind::FiniteKernel);
  }
}

TEST(CheckCommutation, SumCoarseningOfPlane) {
  auto R = fixture::fine_plane();
  auto Rc = coarsen_ring(*R, sum_map());
  const auto a = ideal(2, {{1, 0}, {0, 1}});
  const auto M = GradedModule::ring_module(R);
  const auto hw = DegreeWindow::box(Z1, -5, 0);
  const auto gw = DegreeWindow::box(R->group(), -6, 1);
  EXPECT_THROW(check_commutation(2, a, M, sum_map(), Rc, hw, gw, Caps{14, 8}), CoverageRefused);
  const auto rep = check_commutation(2, a, M, sum_map(), Rc, hw, gw, Caps{14, 8}, true);
  ASSERT_EQ(rep.verdict, Verdict::CommutesOnWindow);
  for (const auto& row : rep.rows) {
    // Fiber sum of the top-cohomology oracle.
    std::size_t want = 0;
    for (const auto& g : row.fiber) want += g.free[0] <= -1 && g.free[1] <= -1 ? 1 : 0;
    EXPECT_EQ(row.coarse_ext, want) << to_string(row.h);
    if (row.h == h(-2)) {
      EXPECT_EQ(row.fine_cech, 1u);
    }
    if (row.h == h(-3)) {
      EXPECT_EQ(row.fine_cech, 2u);
    }
  }
}

TEST(CheckCommutation, ZeroIndexCertifiedByModuleSupport) {
  auto R = fixture::fine_plane();
  auto Rc = coarsen_ring(*R, sum_map());
  auto M = GradedModule::quotient(R, ideal(2, {{2, 0}, {1, 1}}));
  const auto rep = check_commutation(0, ideal(2, {{1, 0}, {0, 1}}), M, sum_map(), Rc, DegreeWindow::box(Z1, 0, 3),
                                     DegreeWindow::box(R->group(), 0, 3), Caps{});
  EXPECT_EQ(rep.verdict, Verdict::CommutesOnWindow);
  EXPECT_EQ(rep.coverage, CoverageKind::ModuleSupport);
}

TEST(CheckCommutation, UnstabilizedIsReported) {
  auto R = fixture::line();
  auto psi = GroupEpimorphism::identity(R->group());
  auto Rc = coarsen_ring(*R, psi);
  const auto w = DegreeWindow::box(R->group(), -6, 0);
  const auto rep = check_commutation(1, ideal(1, {{1}}), GradedModule::ring_module(R), psi, Rc, w, w, Caps{2, 8});
  EXPECT_EQ(rep.verdict, Verdict::Unstabilized);
  EXPECT_FALSE(rep.unstabilized.empty());
}

TEST(Property, CoarseningIsExactOnHilbertFunctions) {
  std::mt19937 rng(41);
  auto R = fixture::fine_plane();
  auto Rc = coarsen_ring(*R, sum_map());
  const auto& G = R->group();
  const std::vector<Degree> pool{G.make({0, 0}), G.make({1, 0}), G.make({0, 1})};
  const std::vector<Degree> steps{G.make({1, 0}), G.make({0, 1}), G.make({1, 1}), G.make({2, 0})};
  const auto gw = DegreeWindow::box(G, 0, 4);
  const auto hw = DegreeWindow::box(Z1, 0, 4);
  for (int trial = 0; trial < 20; ++trial) {
    auto M = fixture::random_module(rng, R, pool, steps);
    CoverageEvidence ev;
    ev.support_module = &M;
    ev.coarse = Rc;
    EXPECT_EQ(coarsen_table(M.hilbert(gw), sum_map(), hw, ev), coarsen_module(M, sum_map(), Rc).hilbert(hw));
  }
}

TEST(Property, HomComparisonIsMonomorphism) {
  std::mt19937 rng(43);
  struct Case {
    RingPtr R;
    GroupEpimorphism psi;
  };
  auto plane = fixture::fine_plane();
  auto twisted = fixture::twisted_plane();
  const std::vector<Case> cases{{plane, sum_map()}, {twisted, projection()}};
  for (int trial = 0; trial < 16; ++trial) {
    const auto& c = cases[trial % 2];
    const auto& G = c.R->group();
    auto Rc = coarsen_ring(*c.R, c.psi);
    std::vector<Degree> pool, steps;
    for (const auto& d : DegreeWindow::box(G, 0, 1)) pool.push_back(d);
    for (const auto& d : c.R->variable_degrees()) steps.push_back(d);
    steps.push_back(G.add(steps[0], steps[1]));
    auto M = fixture::random_module(rng, c.R, pool, steps);
    auto N = fixture::random_module(rng, c.R, pool, steps);
    for (Int v = -2; v <= 2; ++v) {
      const auto r = hom_comparison(M, N, c.psi, Rc, h(v), DegreeWindow::box(G, -5, 5));
      EXPECT_LE(r.fine_sum, r.coarse_dim);
      EXPECT_TRUE(r.injective);
      EXPECT_TRUE(r.images_are_homs);
      // Finitely generated sources: the comparison is onto as well.
      EXPECT_EQ(r.fine_sum, r.coarse_dim) << "trial " << trial << " h=" << v;
    }
  }
}

TEST(Property, IdentityPsiIsTotal) {
  std::mt19937 rng(47);
  auto R = fixture::fine_plane();
  auto psi = GroupEpimorphism::identity(R->group());
  auto Rc = coarsen_ring(*R, psi);
  const auto w = DegreeWindow::box(R->group(), -1, 2);
  for (int trial = 0; trial < 4; ++trial) {
    auto a = fixture::random_ideal(rng, 2, 2, 2);
    auto M = GradedModule::quotient(R, fixture::random_ideal(rng, 2, 2, 3));
    for (int i = 0; i <= 2; ++i)
      EXPECT_EQ(check_commutation(i, a, M, psi, Rc, w, w, Caps{12, 8}).verdict, Verdict::CommutesOnWindow)
          << "trial " << trial << " i=" << i;
    EXPECT_TRUE(check_gamma_identity(a, M, psi, Rc, w, w, 12).holds);
  }
}

TEST(Property, EverySingleMutationIsCaught) {
  auto R = fixture::twisted_plane();
  auto Rc = coarsen_ring(*R, projection());
  const auto hw = DegreeWindow::box(Z1, -4, 2);
  const auto gw = DegreeWindow::box(R->group(), -4, 2);
  const auto M = GradedModule::ring_module(R);
  const auto tables = commutation_tables(2, ideal(2, {{1, 0}, {0, 1}}), M, projection(), Rc, hw, gw, Caps{});
  const auto ev = cohomology_evidence(2, M, Rc, false);
  ASSERT_EQ(judge_commutation(tables, projection(), hw, ev).verdict, Verdict::CommutesOnWindow);
  for (ColimitResult CommutationTables::*which :
       {&CommutationTables::fine_cech, &CommutationTables::fine_ext, &CommutationTables::coarse_cech,
        &CommutationTables::coarse_ext}) {
    for (const auto& g : (tables.*which).table.window()) {
      for (int delta : {-1, 1}) {
        auto t = tables;
        const std::size_t v = (t.*which).table.at(g);
        if (delta < 0 && v == 0) continue;
        (t.*which).table.set(g, v + delta);
        const Degree want = g.torsion.empty() ? g : projection().apply(g);
        const auto rep = judge_commutation(t, projection(), hw, ev);
        EXPECT_EQ(rep.verdict, Verdict::Fails);
        EXPECT_EQ(rep.witnesses, std::vector<Degree>{want}) << to_string(g);
      }
    }
  }
}
