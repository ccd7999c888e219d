#pragma once

// The psi-coarsening functor along an epimorphism psi: G ->> H, applied to
// rings, modules and Hilbert tables; the element-level comparison of graded
// Hom; the Gamma identity; and the commutation checker for local cohomology.

#include <algorithm>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "gcoh/grading.hpp"
#include "gcoh/homres.hpp"
#include "gcoh/linalg.hpp"
#include "gcoh/localcoh.hpp"
#include "gcoh/module.hpp"
#include "gcoh/ring.hpp"

namespace gcoh {

/// A fiber sum could not be certified to cover the whole support.
class CoverageRefused : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Searches small integer functionals for one strictly positive on `degrees`.
inline std::optional<std::vector<Rational>> find_certificate(const DegreeGroup& H, const std::vector<Degree>& degrees,
                                                             Int bound = 3) {
  const std::size_t r = H.free_rank();
  if (r == 0) return std::nullopt;
  // Enumerate by increasing max-norm so the simplest functional wins.
  for (Int norm = 1; norm <= bound; ++norm) {
    std::vector<Int> w(r, -norm);
    while (true) {
      bool on_shell = false;
      for (auto x : w) on_shell = on_shell || x == norm || x == -norm;
      if (on_shell) {
        bool ok = true;
        for (const auto& d : degrees) {
          Int s = 0;
          for (std::size_t i = 0; i < r; ++i) s += w[i] * d.free[i];
          if (s <= 0) {
            ok = false;
            break;
          }
        }
        if (ok) {
          std::vector<Rational> out;
          for (Int v : w) out.push_back(to_rational(v));
          return out;
        }
      }
      std::size_t k = 0;
      while (k < r && ++w[k] > norm) w[k++] = -norm;
      if (k == r) break;
    }
  }
  return std::nullopt;
}

/// R_[psi]: same variables, degrees pushed through psi.
inline RingPtr coarsen_ring(const GradedPolynomialRing& R, const GroupEpimorphism& psi,
                            std::optional<std::vector<Rational>> certificate = std::nullopt) {
  if (!(psi.source() == R.group())) throw std::invalid_argument("coarsen_ring: psi does not start at the ring's group");
  if (!psi.verify_surjective()) throw std::invalid_argument("coarsen_ring: psi is not surjective");
  std::vector<Degree> degs;
  for (const auto& d : R.variable_degrees()) degs.push_back(psi.apply(d));
  if (!certificate) certificate = find_certificate(psi.target(), degs);
  if (!certificate)
    throw std::invalid_argument("coarsen_ring: no positivity certificate for the coarsened ring; supply one explicitly");
  return std::make_shared<GradedPolynomialRing>(psi.target(), R.names(), std::move(degs), std::move(*certificate));
}

/// M_[psi] over the coarsened ring. Homogeneity is re-verified by the
/// GradedModule constructor.
inline GradedModule coarsen_module(const GradedModule& M, const GroupEpimorphism& psi, const RingPtr& coarse) {
  std::vector<Degree> gens;
  for (const auto& d : M.generator_degrees()) gens.push_back(psi.apply(d));
  std::vector<Relation> rels;
  for (const auto& r : M.relations()) rels.push_back(Relation{psi.apply(r.degree), r.entries});
  try {
    return GradedModule(coarse, std::move(gens), std::move(rels));
  } catch (const std::invalid_argument& e) {
    throw std::logic_error(std::string("coarsen_module: coarsened presentation is not homogeneous: ") + e.what());
  }
}

/// Degrees g of G over h at which M can be nonzero: g = e_k + deg_G(m) with m
/// a monomial of coarse degree h - psi(e_k). Finite because the coarsened
/// ring has a positivity certificate.
inline std::vector<Degree> support_over(const GradedModule& M, const GroupEpimorphism& psi, const RingPtr& coarse,
                                        const Degree& h) {
  const auto& G = M.group();
  const auto& H = psi.target();
  std::set<Degree> out;
  for (const auto& e : M.generator_degrees())
    for (const auto& m : coarse->monomials_of_degree(H.subtract(h, psi.apply(e))))
      out.insert(G.add(e, M.ring()->degree(m)));
  return {out.begin(), out.end()};
}

enum class CoverageKind { FiniteKernel, ModuleSupport, Assumed };

inline std::string to_string(CoverageKind k) {
  switch (k) {
    case CoverageKind::FiniteKernel: return "finite-kernel";
    case CoverageKind::ModuleSupport: return "module-support";
    case CoverageKind::Assumed: return "assumed";
  }
  return "?";
}

/// What a caller can offer to certify that a fiber sum sees the whole support.
struct CoverageEvidence {
  const GradedModule* support_module = nullptr;  // table is supported inside this module's support
  RingPtr coarse;
  bool assume_covered = false;
};

/// Certifies, for each h, that every degree over h that can carry a nonzero
/// value lies in `gw`. Throws CoverageRefused otherwise.
inline CoverageKind certify_coverage(const GroupEpimorphism& psi, const DegreeWindow& gw, const DegreeWindow& hw,
                                     const CoverageEvidence& ev) {
  if (psi.kernel_is_finite()) {
    const Int order = psi.kernel_order();
    bool full = true;
    for (const auto& h : hw)
      if (static_cast<Int>(fiber(psi, h, gw).size()) != order) {
        if (!ev.assume_covered && !ev.support_module)
          throw CoverageRefused("fiber over " + to_string(h) + " is not contained in the source window (kernel has " +
                                std::to_string(order) + " elements)");
        full = false;
      }
    if (full) return CoverageKind::FiniteKernel;
  }
  if (ev.support_module && ev.coarse) {
    bool ok = true;
    std::string missing;
    for (const auto& h : hw)
      for (const auto& g : support_over(*ev.support_module, psi, ev.coarse, h))
        if (!gw.contains(g)) {
          ok = false;
          if (missing.empty()) missing = to_string(g) + " over " + to_string(h);
        }
    if (ok) return CoverageKind::ModuleSupport;
    if (!ev.assume_covered)
      throw CoverageRefused("support degree " + missing + " lies outside the source window");
  }
  if (ev.assume_covered) return CoverageKind::Assumed;
  throw CoverageRefused(
      "kernel of psi is infinite and the table's support cannot be bounded by the positivity certificate; "
      "pass --assume-support-covered to accept the fiber sums over the given window");
}

/// Value at h = sum of T over fiber(psi, h, window of T).
inline HilbertTable coarsen_table(const HilbertTable& T, const GroupEpimorphism& psi, const DegreeWindow& hw,
                                  const CoverageEvidence& ev, CoverageKind* used = nullptr) {
  const auto kind = certify_coverage(psi, T.window(), hw, ev);
  if (used) *used = kind;
  HilbertTable out(hw);
  for (const auto& h : hw) {
    std::size_t s = 0;
    for (const auto& g : fiber(psi, h, T.window())) s += T.at(g);
    out.set(h, s);
  }
  return out;
}

/// Comparison of Hom_G(M, N) summed along a fiber with Hom_H(M_[psi], N_[psi]).
struct HomComparison {
  Degree h;
  std::vector<Degree> fiber;  // degrees of G over h that can carry homomorphisms
  std::size_t fine_sum = 0;
  std::size_t coarse_dim = 0;
  bool equal = false;
  bool images_are_homs = false;  // every coarsened G-hom satisfies the H-relations
  bool injective = false;        // coarsened G-homs are linearly independent
};

namespace detail {

/// Coordinates, in the quotient basis of the coarse component, of a vector
/// given in the quotient basis of a fine component.
inline Vector push_vector(const Component& fine, const Component& coarse, const Vector& q) {
  const Vector lifted = fine.lift(q);
  Vector free(coarse.free_dim());
  for (std::size_t i = 0; i < lifted.size(); ++i) {
    if (sgn(lifted[i]) == 0) continue;
    auto idx = coarse.find(fine.free_basis()[i]);
    if (!idx) throw std::logic_error("push_vector: free basis element missing from the coarse component");
    free[*idx] = lifted[i];
  }
  return coarse.reduce(free);
}

}  // namespace detail

inline HomComparison hom_comparison(const GradedModule& M, const GradedModule& N, const GroupEpimorphism& psi,
                                    const RingPtr& coarse, const Degree& h, const DegreeWindow& gw) {
  const auto& G = M.group();
  const auto& H = psi.target();
  HomComparison out;
  out.h = h;
  // Hom(M, N)_g sits inside (+)_j N_{d_j + g}, so g = (support degree of N) - d_j.
  std::set<Degree> candidates;
  for (const auto& d : M.generator_degrees())
    for (const auto& s : support_over(N, psi, coarse, H.add(h, psi.apply(d)))) candidates.insert(G.subtract(s, d));
  for (const auto& g : candidates)
    if (!gw.contains(g))
      throw CoverageRefused("hom_comparison: degree " + to_string(g) + " over " + to_string(h) +
                            " lies outside the source window");
  out.fiber.assign(candidates.begin(), candidates.end());

  const GradedModule Mc = coarsen_module(M, psi, coarse);
  const GradedModule Nc = coarsen_module(N, psi, coarse);
  const auto coarse_hom = graded_hom(Mc, Nc, h);
  out.coarse_dim = coarse_hom.dim();
  const Subspace coarse_span(coarse_hom.basis, coarse_hom.layout.dim);

  std::vector<Vector> images;
  for (const auto& g : out.fiber) {
    const auto fine_hom = graded_hom(M, N, g);
    out.fine_sum += fine_hom.dim();
    for (const auto& phi : fine_hom.basis) {
      Vector img(coarse_hom.layout.dim);
      for (std::size_t j = 0; j < fine_hom.layout.blocks.size(); ++j) {
        const Component& from = *fine_hom.layout.blocks[j];
        const Component& to = *coarse_hom.layout.blocks[j];
        Vector part(phi.begin() + static_cast<std::ptrdiff_t>(fine_hom.layout.offsets[j]),
                    phi.begin() + static_cast<std::ptrdiff_t>(fine_hom.layout.offsets[j] + from.dim()));
        const Vector pushed = detail::push_vector(from, to, part);
        for (std::size_t r = 0; r < pushed.size(); ++r) img[coarse_hom.layout.offsets[j] + r] = pushed[r];
      }
      images.push_back(std::move(img));
    }
  }
  out.images_are_homs = std::all_of(images.begin(), images.end(), [&](const Vector& v) { return coarse_span.contains(v); });
  out.injective = Subspace(images, coarse_hom.layout.dim).dim() == images.size();
  out.equal = out.fine_sum == out.coarse_dim;
  return out;
}

/// Gamma computed over G and coarsened elementwise, against Gamma of the
/// coarsened module, compared as subspaces of each coarse component.
struct GammaIdentityReport {
  bool holds = false;
  bool stabilized = false;
  std::vector<Degree> mismatches;
  std::map<Degree, std::pair<std::size_t, std::size_t>> dims;  // h -> (coarsened fine, coarse)
};

inline GammaIdentityReport check_gamma_identity(const MonomialIdeal& a, const GradedModule& M,
                                                const GroupEpimorphism& psi, const RingPtr& coarse,
                                                const DegreeWindow& hw, const DegreeWindow& gw, int n_cap) {
  GammaIdentityReport rep;
  std::map<Degree, std::vector<Degree>> over;
  std::vector<Degree> all;
  for (const auto& h : hw) {
    auto s = support_over(M, psi, coarse, h);
    for (const auto& g : s)
      if (!gw.contains(g))
        throw CoverageRefused("check_gamma_identity: support degree " + to_string(g) + " over " + to_string(h) +
                              " lies outside the source window");
    all.insert(all.end(), s.begin(), s.end());
    over[h] = std::move(s);
  }
  const GradedModule Mc = coarsen_module(M, psi, coarse);
  const auto fine = torsion_submodule(a, M, DegreeWindow(all), n_cap);
  const auto coarse_gamma = torsion_submodule(a, Mc, hw, n_cap);
  rep.stabilized = fine.stabilized && coarse_gamma.stabilized;
  rep.holds = rep.stabilized;
  for (const auto& h : hw) {
    const Component& target = Mc.component(h);
    std::vector<Vector> pushed;
    for (const auto& g : over[h]) {
      const Component& src = M.component(g);
      for (const auto& v : fine.subspaces.at(g).basis()) pushed.push_back(detail::push_vector(src, target, v));
    }
    const Subspace lhs(std::move(pushed), target.dim());
    const Subspace& rhs = coarse_gamma.subspaces.at(h);
    rep.dims[h] = {lhs.dim(), rhs.dim()};
    if (!(lhs == rhs)) {
      rep.holds = false;
      rep.mismatches.push_back(h);
    }
  }
  return rep;
}

enum class Verdict { CommutesOnWindow, Fails, Unstabilized };

inline std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::CommutesOnWindow: return "COMMUTES_ON_WINDOW";
    case Verdict::Fails: return "FAILS";
    case Verdict::Unstabilized: return "UNSTABILIZED";
  }
  return "?";
}

/// The four tables of a commutation check: H^i over G by both routes (on gw),
/// and H^i of the coarsened module over H by both routes (on hw).
struct CommutationTables {
  int index = 0;
  ColimitResult fine_cech;
  ColimitResult fine_ext;
  ColimitResult coarse_cech;
  ColimitResult coarse_ext;
};

struct ScenarioRow {
  Degree h;
  std::vector<Degree> fiber;
  std::size_t fine_cech = 0;  // fiber sums
  std::size_t fine_ext = 0;
  std::size_t coarse_cech = 0;
  std::size_t coarse_ext = 0;
  bool agree = false;
};

struct ScenarioReport {
  Verdict verdict = Verdict::Fails;
  int index = 0;
  CoverageKind coverage = CoverageKind::Assumed;
  std::vector<ScenarioRow> rows;
  std::vector<Degree> witnesses;
  std::vector<std::string> unstabilized;
  std::map<std::string, std::string> routes;
  std::map<std::string, int> stable_stages;
};

/// Compares coarsened G-tables with H-tables degreewise. FAILS carries every
/// h at which the four values disagree.
inline ScenarioReport judge_commutation(const CommutationTables& t, const GroupEpimorphism& psi, const DegreeWindow& hw,
                                        const CoverageEvidence& ev) {
  ScenarioReport rep;
  rep.index = t.index;
  const std::pair<const char*, const ColimitResult*> named[] = {
      {"fine_cech", &t.fine_cech}, {"fine_ext", &t.fine_ext}, {"coarse_cech", &t.coarse_cech}, {"coarse_ext", &t.coarse_ext}};
  for (const auto& [name, r] : named) {
    rep.routes[name] = r->route;
    rep.stable_stages[name] = r->stable_stage;
    if (!r->stabilized) rep.unstabilized.push_back(name);
  }
  const auto cc = coarsen_table(t.fine_cech.table, psi, hw, ev, &rep.coverage);
  const auto ce = coarsen_table(t.fine_ext.table, psi, hw, ev);
  for (const auto& h : hw) {
    ScenarioRow row;
    row.h = h;
    row.fiber = fiber(psi, h, t.fine_cech.table.window());
    row.fine_cech = cc.at(h);
    row.fine_ext = ce.at(h);
    row.coarse_cech = t.coarse_cech.table.at(h);
    row.coarse_ext = t.coarse_ext.table.at(h);
    row.agree = row.fine_cech == row.fine_ext && row.fine_ext == row.coarse_cech && row.coarse_cech == row.coarse_ext;
    if (!row.agree) rep.witnesses.push_back(h);
    rep.rows.push_back(std::move(row));
  }
  if (!rep.unstabilized.empty())
    rep.verdict = Verdict::Unstabilized;
  else
    rep.verdict = rep.witnesses.empty() ? Verdict::CommutesOnWindow : Verdict::Fails;
  return rep;
}

inline CommutationTables commutation_tables(int i, const MonomialIdeal& a, const GradedModule& M,
                                            const GroupEpimorphism& psi, const RingPtr& coarse,
                                            const DegreeWindow& hw, const DegreeWindow& gw, const Caps& caps) {
  const GradedModule Mc = coarsen_module(M, psi, coarse);
  CommutationTables t;
  t.index = i;
  t.fine_cech = local_cohomology_cech(i, a, M, gw, caps);
  t.fine_ext = local_cohomology_ext(i, a, M, gw, caps.n_cap);
  t.coarse_cech = local_cohomology_cech(i, a, Mc, hw, caps);
  t.coarse_ext = local_cohomology_ext(i, a, Mc, hw, caps.n_cap);
  return t;
}

/// Evidence available for H^i tables: H^0 is a submodule of M, so M's
/// support bounds it; higher H^i need a finite kernel or an explicit assertion.
inline CoverageEvidence cohomology_evidence(int i, const GradedModule& M, const RingPtr& coarse, bool assume_covered) {
  CoverageEvidence ev;
  ev.assume_covered = assume_covered;
  ev.coarse = coarse;
  if (i == 0) ev.support_module = &M;
  return ev;
}

inline ScenarioReport check_commutation(int i, const MonomialIdeal& a, const GradedModule& M,
                                        const GroupEpimorphism& psi, const RingPtr& coarse, const DegreeWindow& hw,
                                        const DegreeWindow& gw, const Caps& caps, bool assume_covered = false) {
  const auto ev = cohomology_evidence(i, M, coarse, assume_covered);
  // Refuse before the expensive part if the fibers cannot be certified.
  certify_coverage(psi, gw, hw, ev);
  return judge_commutation(commutation_tables(i, a, M, psi, coarse, hw, gw, caps), psi, hw, ev);
}

}  // namespace gcoh
