// One PASS/FAIL line per acceptance criterion. Every comparison is between
// exact integers or exact rationals; nothing is rounded or approximated.

#include <cstdio>
#include <exception>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "gcoh/coarsen.hpp"
#include "gcoh/monoidx.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace gcoh;
using fixture::ideal;

namespace {

struct Check {
  bool ok = true;
  std::ostringstream why;

  void expect(bool cond, const std::string& what) {
    if (!cond && ok) why << what;
    ok = ok && cond;
  }
};

const DegreeGroup Z1 = DegreeGroup::free_group(1);

GroupEpimorphism sum_map() { return GroupEpimorphism(DegreeGroup::free_group(2), Z1, {{1, 1}}); }
GroupEpimorphism projection() { return GroupEpimorphism(DegreeGroup(1, {2}), Z1, {{1, 0}}); }

/// Both routes on a window, compared with each other and with the hand-written
/// Cech oracle for a monomial quotient of a fine-graded ring.
void routes_against_oracle(Check& c, int i, const MonomialIdeal& a, const RingPtr& R, const DegreeWindow& w,
                           const std::function<std::size_t(const Degree&)>& expected) {
  const auto M = GradedModule::ring_module(R);
  const auto cech = local_cohomology_cech(i, a, M, w, Caps{});
  const auto ext = local_cohomology_ext(i, a, M, w, 10);
  const std::string tag = "H^" + std::to_string(i);
  c.expect(cech.stabilized, tag + " Cech route did not stabilize; ");
  c.expect(ext.stabilized, tag + " Ext route did not stabilize; ");
  c.expect(cech.table == ext.table, tag + " routes disagree; ");
  for (const auto& g : w) {
    const auto want = expected(g);
    const auto brute = oracle::fine_cech_dim(fixture::exps(a), g.free, static_cast<std::size_t>(i));
    c.expect(brute == want, tag + " oracle disagrees with the pattern at " + to_string(g) + "; ");
    c.expect(cech.table.at(g) == want, tag + " wrong at " + to_string(g) + "; ");
  }
}

Check laurent() {
  Check c;
  auto R = fixture::line();
  const auto a = ideal(1, {{1}});
  const auto w = DegreeWindow::box(R->group(), -6, 4);
  routes_against_oracle(c, 1, a, R, w, [](const Degree& g) { return g.free[0] <= -1 ? 1u : 0u; });
  routes_against_oracle(c, 0, a, R, w, [](const Degree&) { return 0u; });
  return c;
}

Check fine_plane() {
  Check c;
  auto R = fixture::fine_plane();
  const auto a = ideal(2, {{1, 0}, {0, 1}});
  const auto w = DegreeWindow::box(R->group(), -3, 1);
  routes_against_oracle(c, 2, a, R, w,
                        [](const Degree& g) { return g.free[0] <= -1 && g.free[1] <= -1 ? 1u : 0u; });
  for (int i : {0, 1}) routes_against_oracle(c, i, a, R, w, [](const Degree&) { return 0u; });
  return c;
}

/// Standard-graded H^2_{(x,y)}(K[x,y]) at h: the monomials x^a y^b with
/// a, b <= -1 and a + b = h.
std::size_t standard_top(Int h) { return h <= -2 ? static_cast<std::size_t>(-h - 1) : 0u; }

Check sum_coarsening() {
  Check c;
  auto R = fixture::fine_plane();
  auto Rc = coarsen_ring(*R, sum_map());
  const auto a = ideal(2, {{1, 0}, {0, 1}});
  const auto M = GradedModule::ring_module(R);
  const auto hw = DegreeWindow::box(Z1, -5, 0);
  const auto gw = DegreeWindow::box(R->group(), -6, 1);
  for (int i = 0; i <= 2; ++i) {
    // The kernel of the sum map is infinite, so higher fiber sums are taken on
    // the stated window by assertion; H^0 is certified by M's support.
    const auto rep = check_commutation(i, a, M, sum_map(), Rc, hw, gw, Caps{14, 8}, i >= 1);
    c.expect(rep.verdict == Verdict::CommutesOnWindow, "i=" + std::to_string(i) + " verdict " + to_string(rep.verdict) + "; ");
    for (const auto& row : rep.rows) {
      const std::size_t want = i == 2 ? standard_top(row.h.free[0]) : 0;
      c.expect(row.coarse_ext == want && row.coarse_cech == want, "coarse H^" + std::to_string(i) + " wrong at " + to_string(row.h) + "; ");
      c.expect(row.fine_cech == want && row.fine_ext == want, "fiber sum of H^" + std::to_string(i) + " wrong at " + to_string(row.h) + "; ");
      if (i == 2 && row.h.free[0] == -2) c.expect(row.fine_cech == 1, "fiber sum at -2 is not 1; ");
      if (i == 2 && row.h.free[0] == -3) c.expect(row.fine_cech == 2, "fiber sum at -3 is not 2; ");
    }
  }
  return c;
}

Check finite_kernel() {
  Check c;
  auto R = fixture::twisted_plane();
  auto Rc = coarsen_ring(*R, projection());
  const auto a = ideal(2, {{1, 0}, {0, 1}});
  const auto hw = DegreeWindow::box(Z1, -4, 2);
  const auto gw = DegreeWindow::box(R->group(), -4, 2);
  for (int i = 0; i <= 2; ++i) {
    const auto rep = check_commutation(i, a, GradedModule::ring_module(R), projection(), Rc, hw, gw, Caps{});
    c.expect(rep.verdict == Verdict::CommutesOnWindow, "i=" + std::to_string(i) + " verdict " + to_string(rep.verdict) + "; ");
    c.expect(rep.coverage == CoverageKind::FiniteKernel, "coverage not certified by the finite kernel; ");
    for (const auto& row : rep.rows)
      c.expect(row.coarse_ext == (i == 2 ? standard_top(row.h.free[0]) : 0u), "coarse H^" + std::to_string(i) + " wrong; ");
  }
  return c;
}

Check four_term_sequence() {
  Check c;
  auto run = [&](const std::string& name, const MonomialIdeal& a, const GradedModule& M, const DegreeWindow& w,
                 bool expect_higher) {
    const auto rep = check_four_term_sequence(a, M, w);
    c.expect(rep.stabilized, name + ": unstabilized; ");
    c.expect(rep.holds, name + ": " + (rep.failures.empty() ? std::string("fails") : rep.failures[0]) + "; ");
    c.expect(rep.rows.size() == w.size(), name + ": rows missing; ");
    for (const auto& row : rep.rows) c.expect(row.exact, name + ": not exact at " + to_string(row.degree) + "; ");
    for (const auto& row : rep.higher)
      c.expect(row.transform == row.cohomology, name + ": D^i != H^(i+1) at " + to_string(row.degree) + "; ");
    if (expect_higher) c.expect(!rep.higher.empty(), name + ": no D^i comparisons; ");
  };
  auto line = fixture::line();
  run("K[x]", ideal(1, {{1}}), GradedModule::ring_module(line), DegreeWindow::box(line->group(), -4, 3), true);
  auto plane = fixture::fine_plane();
  const auto m = ideal(2, {{1, 0}, {0, 1}});
  run("K[x,y]", m, GradedModule::ring_module(plane), DegreeWindow::box(plane->group(), -2, 1), true);
  run("K[x,y]/(x^2,y^2)", m, GradedModule::quotient(plane, ideal(2, {{2, 0}, {0, 2}})),
      DegreeWindow::box(plane->group(), -1, 2), true);
  return c;
}

Check gamma_identity() {
  Check c;
  auto plane = fixture::fine_plane();
  auto twisted = fixture::twisted_plane();
  struct Case {
    std::string name;
    RingPtr R;
    GroupEpimorphism psi;
    DegreeWindow hw, gw;
  };
  const std::vector<Case> cases{
      {"sum", plane, sum_map(), DegreeWindow::box(Z1, -5, 3), DegreeWindow::box(plane->group(), -6, 3)},
      {"projection", twisted, projection(), DegreeWindow::box(Z1, -4, 3), DegreeWindow::box(twisted->group(), -4, 3)}};
  for (const auto& cs : cases) {
    auto Rc = coarsen_ring(*cs.R, cs.psi);
    const auto a = ideal(2, {{1, 0}, {0, 1}});
    for (const auto& J : {std::vector<std::vector<int>>{}, {{2, 0}, {1, 1}}, {{2, 0}, {0, 2}}}) {
      const auto M = J.empty() ? GradedModule::ring_module(cs.R) : GradedModule::quotient(cs.R, ideal(2, J));
      const auto rep = check_gamma_identity(a, M, cs.psi, Rc, cs.hw, cs.gw, 10);
      c.expect(rep.holds, cs.name + ": spans differ; ");
      // Dimension cross-check against the colon oracle on the fine side.
      if (cs.R == plane)
        for (const auto& [h, d] : rep.dims) {
          std::size_t want = 0;
          for (const auto& g : fiber(cs.psi, h, cs.gw))
            want += oracle::torsion_dim(fixture::free_degrees(*cs.R), fixture::exps(a), fixture::exps(ideal(2, J)), g.free, 8);
          c.expect(d.first == want && d.second == want, cs.name + ": wrong dimension at " + to_string(h) + "; ");
        }
    }
  }
  return c;
}

Check monomorphism_law() {
  Check c;
  std::mt19937 rng(20260101);
  auto plane = fixture::fine_plane();
  auto twisted = fixture::twisted_plane();
  for (int trial = 0; trial < 25; ++trial) {
    const bool use_plane = trial % 2 == 0;
    const RingPtr R = use_plane ? plane : twisted;
    const GroupEpimorphism psi = use_plane ? sum_map() : projection();
    const auto& G = R->group();
    auto Rc = coarsen_ring(*R, psi);
    std::vector<Degree> pool, steps;
    for (const auto& d : DegreeWindow::box(G, 0, 1)) pool.push_back(d);
    for (const auto& d : R->variable_degrees()) steps.push_back(d);
    steps.push_back(G.add(steps[0], steps[1]));
    const auto M = fixture::random_module(rng, R, pool, steps);
    const auto N = fixture::random_module(rng, R, pool, steps);
    for (Int v = -2; v <= 3; ++v) {
      const auto r = hom_comparison(M, N, psi, Rc, Z1.make({v}), DegreeWindow::box(G, -6, 6));
      const std::string at = "pair " + std::to_string(trial) + " h=" + std::to_string(v) + ": ";
      c.expect(r.fine_sum <= r.coarse_dim, at + "fiber sum exceeds coarse Hom; ");
      c.expect(r.injective && r.images_are_homs, at + "coarsened homs are not independent homs; ");
      // Every source here is finitely generated.
      c.expect(r.fine_sum == r.coarse_dim, at + "finite-type source without equality; ");
    }
  }
  return c;
}

Check counterexample_family() {
  Check c;
  using namespace gcoh::monoid;
  for (int K = 1; K <= 10; ++K) {
    const auto f = build_witness_hom(K);
    std::vector<Rational> probes;
    for (int p = 1; p <= 3 * K; ++p) probes.push_back(Rational(1, p + 1));
    probes.push_back(Rational(7, 3));
    const auto cert = certify(f, probes);
    std::vector<Rational> want;
    for (int k = 1; k <= K; ++k) want.push_back(Rational(k));
    const std::string at = "K=" + std::to_string(K) + ": ";
    c.expect(cert.support == want, at + "support is not {1..K}; ");
    c.expect(graded_component_count(f) == static_cast<std::size_t>(K), at + "component count; ");
    c.expect(cert.well_defined && cert.distinct_degrees, at + "not locally finite; ");
    for (const auto& beta : probes) {
      std::vector<int> levels;
      for (int k = 1; k <= K; ++k)
        if (Rational(1, k) > beta) levels.push_back(k);
      c.expect(f.nonzero_levels(beta) == levels, at + "probe e_" + beta.get_str() + "; ");
    }
  }
  std::mt19937 rng(20260102);
  std::uniform_int_distribution<long> num(1, 30), den(1, 12);
  auto rational = [&] {
    Rational r(num(rng), den(rng));
    r.canonicalize();
    return r;
  };
  for (int t = 0; t < 10; ++t) c.expect(idempotency_witness(rational()).verified(), "idempotency; ");
  std::uniform_int_distribution<int> size(1, 4), coeff(1, 5);
  for (int t = 0; t < 5; ++t) {
    std::vector<Element> S;
    const int n = size(rng);
    for (int i = 0; i < n; ++i) S.push_back(Element::basis(rational(), coeff(rng)) + Element::basis(rational() + 1));
    const auto w = non_finite_generation_witness(S);
    c.expect(w.verified(), "non-finite-generation certificate; ");
    Rational mu = *S[0].min_exponent();
    for (const auto& s : S) mu = std::min(mu, *s.min_exponent());
    c.expect(w.witness == Element::basis(mu / 2), "witness is not e_{mu/2}; ");
  }
  return c;
}

Check checker_sensitivity() {
  Check c;
  // Golden coarse table of H^2 for the finite-kernel scenario, h = -4..2.
  const std::vector<std::size_t> golden{3, 2, 1, 0, 0, 0, 0};
  auto R = fixture::twisted_plane();
  auto Rc = coarsen_ring(*R, projection());
  const auto hw = DegreeWindow::box(Z1, -4, 2);
  const auto gw = DegreeWindow::box(R->group(), -4, 2);
  const auto M = GradedModule::ring_module(R);
  const auto tables = commutation_tables(2, ideal(2, {{1, 0}, {0, 1}}), M, projection(), Rc, hw, gw, Caps{});
  for (Int h = -4; h <= 2; ++h)
    c.expect(tables.coarse_ext.table.at(Z1.make({h})) == golden[h + 4], "golden table mismatch; ");
  const auto ev = cohomology_evidence(2, M, Rc, false);
  c.expect(judge_commutation(tables, projection(), hw, ev).verdict == Verdict::CommutesOnWindow, "unmutated tables fail; ");
  std::size_t mutations = 0;
  for (ColimitResult CommutationTables::*which :
       {&CommutationTables::fine_cech, &CommutationTables::fine_ext, &CommutationTables::coarse_cech,
        &CommutationTables::coarse_ext}) {
    for (const auto& g : (tables.*which).table.window()) {
      for (int delta : {-1, 1}) {
        auto t = tables;
        const std::size_t v = (t.*which).table.at(g);
        if (delta < 0 && v == 0) continue;
        (t.*which).table.set(g, v + delta);
        ++mutations;
        const Degree want = g.torsion.empty() ? g : projection().apply(g);
        const auto rep = judge_commutation(t, projection(), hw, ev);
        c.expect(rep.verdict == Verdict::Fails && rep.witnesses == std::vector<Degree>{want},
                 "mutation at " + to_string(g) + " not caught with the right witness; ");
      }
    }
  }
  c.expect(mutations > 0, "no mutations tried; ");
  return c;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Check()>>> criteria{
      {"Laurent pattern: H^1_(x)(K[x]) = 1 on [-6,-1], 0 on [0,4], H^0 = 0, both routes", laurent},
      {"fine plane: H^2 = 1 iff a,b <= -1 on [-3,1]^2, H^0 = H^1 = 0, both routes", fine_plane},
      {"sum coarsening Z^2 -> Z: fiber sums match standard-graded H^i on [-5,0], i = 0,1,2", sum_coarsening},
      {"finite kernel Z+Z/2 -> Z: COMMUTES_ON_WINDOW for i = 0,1,2 on [-4,2]", finite_kernel},
      {"four-term sequence and D^i = H^(i+1) on three scenarios", four_term_sequence},
      {"Gamma identity as equality of spans on the sum and projection scenarios", gamma_identity},
      {"graded Hom comparison is injective, with equality, on 25 random pairs", monomorphism_law},
      {"witness family f_K certified for K = 1..10 (the full family is a published theorem, not claimed here)",
       counterexample_family},
      {"every single mutation of a golden table gives FAILS at the right degree", checker_sensitivity},
  };
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Check c;
    try {
      c = criteria[k].second();
    } catch (const std::exception& e) {
      c.ok = false;
      c.why << "exception: " << e.what();
    }
    std::printf("%s %zu %s%s%s\n", c.ok ? "PASS" : "FAIL", k + 1, criteria[k].first.c_str(), c.ok ? "" : " -- ",
                c.ok ? "" : c.why.str().c_str());
    std::fflush(stdout);
    failed += c.ok ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
