#pragma once

// Graded a-torsion, the Cech cocomplex, local cohomology by two independent
// routes (Cech and colim Ext(R/a^n, -)), ideal transforms, and the four-term
// sequence 0 -> Gamma_a -> Id -> D^0_a -> H^1_a -> 0.

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "gcoh/complex.hpp"
#include "gcoh/grading.hpp"
#include "gcoh/homres.hpp"
#include "gcoh/linalg.hpp"
#include "gcoh/module.hpp"
#include "gcoh/ring.hpp"

namespace gcoh {

struct Caps {
  int n_cap = 10;   // stages of every direct limit
  int ray_cap = 8;  // ray steps when localizing a single component
};

struct TorsionResult {
  HilbertTable table;
  bool stabilized = false;
  int stable_stage = 0;
  std::map<Degree, Subspace> subspaces;  // Gamma_g inside M_g, in M's quotient coordinates
  std::map<Degree, std::vector<std::size_t>> trajectory;
};

namespace detail {

/// (0 :_M b) in degree g, for a monomial ideal b.
inline Subspace annihilated(const GradedModule& M, const MonomialIdeal& b, const Degree& g) {
  const auto& comp = M.component(g);
  std::vector<Vector> rows;
  for (const auto& m : b.generators()) {
    const Matrix mult = M.multiplication_map(m, g);
    for (std::size_t r = 0; r < mult.rows(); ++r) {
      Vector row(mult.cols());
      for (std::size_t c = 0; c < mult.cols(); ++c) row[c] = mult(r, c);
      rows.push_back(std::move(row));
    }
  }
  Matrix stacked(rows.size(), comp.dim());
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < comp.dim(); ++c) stacked(r, c) = rows[r][c];
  if (rows.empty()) return Subspace::whole(comp.dim());
  return Subspace(kernel(stacked), comp.dim());
}

}  // namespace detail

/// Gamma_a(M) = union of (0 :_M a^n), computed as increasing kernels for
/// n = 1..n_cap and declared stable once the kernels stop growing on the
/// whole window for `stability_confirmations` consecutive steps.
inline TorsionResult torsion_submodule(const MonomialIdeal& a, const GradedModule& M, const DegreeWindow& w,
                                       int n_cap) {
  if (n_cap < 2) throw std::invalid_argument("torsion_submodule: n_cap must be at least 2");
  TorsionResult out;
  out.table = HilbertTable(w);
  std::map<Degree, Subspace> last;
  int streak = 0;
  for (int n = 1; n <= n_cap; ++n) {
    const auto power = ideal_power(a, n);
    bool same = n > 1;
    std::map<Degree, Subspace> cur;
    for (const auto& g : w) {
      auto sub = detail::annihilated(M, power, g);
      out.trajectory[g].push_back(sub.dim());
      if (same && last.at(g).dim() != sub.dim()) same = false;
      cur.emplace(g, std::move(sub));
    }
    last = std::move(cur);
    streak = same ? streak + 1 : 0;
    if (streak == stability_confirmations) {
      out.stabilized = true;
      out.stable_stage = n - streak;
      break;
    }
  }
  for (auto& [g, sub] : last) {
    out.table.set(g, sub.dim());
    out.subspaces.emplace(g, std::move(sub));
  }
  return out;
}

/// (M_f)_d as the colimit of the ray M_d -> M_{d + deg f} -> ... under
/// multiplication by f. A step only counts once the ray has reached the weight
/// of every generator and relation degree; before that a run of zero
/// components says nothing. Stability needs a run of bijective steps whose
/// length depends on the relations.
struct LocalizationComponent {
  Degree degree;
  Monomial inverted;
  bool stabilized = false;
  int stable_index = 0;
  std::size_t dim = 0;
  std::vector<std::size_t> ray_dims;
};

inline LocalizationComponent localize(const GradedModule& M, const Monomial& f, const Degree& d, int ray_cap) {
  LocalizationComponent out;
  out.degree = d;
  out.inverted = f;
  if (f.is_one()) {
    out.stabilized = true;
    out.dim = M.dim(d);
    out.ray_dims = {out.dim};
    return out;
  }
  const auto& G = M.group();
  const auto& R = *M.ring();
  const Degree step = R.degree(f);
  std::optional<Rational> floor;
  auto raise = [&](const Degree& e) {
    const Rational v = R.weight(e);
    if (!floor || v > *floor) floor = v;
  };
  for (const auto& e : M.generator_degrees()) raise(e);
  for (const auto& r : M.relations()) raise(r.degree);
  // An element killed by a power of f is killed by f^span when the relations
  // are monomial, so a run of `span` bijective steps cannot be undone later.
  int span = stability_confirmations;
  for (const auto& r : M.relations())
    for (const auto& p : r.entries)
      for (const auto& [m, c] : p.terms())
        for (std::size_t v = 0; v < m.size(); ++v)
          if (f[v] > 0) span = std::max(span, (m[v] + f[v] - 1) / f[v]);
  // A generator the ray will reach later but has not reached yet makes the
  // current zero components meaningless; probe far along the ray to tell.
  const Degree far = G.scale(step, 4 * (ray_cap + span) + 8);
  auto reached = [&](const Degree& e) {
    for (const auto& g : M.generator_degrees()) {
      const Degree rel = G.subtract(e, g);
      if (R.monomials_of_degree(rel).empty() && !R.monomials_of_degree(G.add(rel, far)).empty()) return false;
    }
    return true;
  };
  Degree cur = d;
  int streak = 0;
  for (int k = 0; k <= ray_cap; ++k) {
    const Degree next = G.add(cur, step);
    const std::size_t a = M.dim(cur);
    out.ray_dims.push_back(a);
    const bool past = (!floor || R.weight(cur) >= *floor) && reached(cur);
    const bool bijective = past && a == M.dim(next) && rank(M.multiplication_map(f, cur)) == a;
    streak = bijective ? streak + 1 : 0;
    if (streak == span) {
      out.stabilized = true;
      out.stable_index = k - streak + 1;
      out.dim = a;
      return out;
    }
    cur = next;
  }
  return out;
}

/// The Cech cocomplex of M with respect to a finite list of monomials:
/// C^p = (+)_{|S| = p} M_{f_S}, with the signed localization maps.
class CechComplex {
 public:
  CechComplex(std::vector<Monomial> gens, GradedModule M) : gens_(std::move(gens)), module_(std::move(M)) {}

  const std::vector<Monomial>& generators() const { return gens_; }
  const GradedModule& module() const { return module_; }
  std::size_t length() const { return gens_.size(); }

  Monomial product(const std::vector<std::size_t>& S) const {
    Monomial f = module_.ring()->one();
    for (auto i : S) f = f * gens_.at(i);
    return f;
  }

  /// Localization data of every summand of C^p in degree h.
  std::vector<LocalizationComponent> term_components(std::size_t p, const Degree& h, int ray_cap) const {
    std::vector<LocalizationComponent> out;
    for (const auto& S : subsets_of_size(gens_.size(), p)) out.push_back(localize(module_, product(S), h, ray_cap));
    return out;
  }

  /// dim C^p_h for every p, or nullopt if some localization does not stabilize.
  std::optional<std::vector<std::size_t>> term_dims(const Degree& h, int ray_cap) const {
    std::vector<std::size_t> dims;
    for (std::size_t p = 0; p <= gens_.size(); ++p) {
      std::size_t total = 0;
      for (const auto& c : term_components(p, h, ray_cap)) {
        if (!c.stabilized) return std::nullopt;
        total += c.dim;
      }
      dims.push_back(total);
    }
    return dims;
  }

  /// Smallest k >= 1 past the stabilization index of every summand in degree h.
  std::optional<int> common_stage(const Degree& h, int ray_cap) const {
    int k = 1;
    for (std::size_t p = 0; p <= gens_.size(); ++p)
      for (const auto& c : term_components(p, h, ray_cap)) {
        if (!c.stabilized) return std::nullopt;
        k = std::max(k, c.stable_index);
      }
    return k;
  }

  /// The complex C^._h itself. Once every ray is stable at k, m/f_S^k
  /// identifies M_{h + k deg f_S} with (M_{f_S})_h, and the Cech maps become
  /// the Koszul maps of (f_1^k, ..., f_s^k).
  std::optional<DegreeCochains> evaluate(const Degree& h, int ray_cap) const {
    auto k = common_stage(h, ray_cap);
    if (!k) return std::nullopt;
    return hom_cochains(koszul_stage(*module_.ring(), gens_, *k), module_, h);
  }

  /// Finite stages Hom(K(f^k), M), k = 1..cap, whose colimit is this complex.
  FreeSystem stages(int cap) const { return koszul_power_system(*module_.ring(), gens_, cap); }

 private:
  std::vector<Monomial> gens_;
  GradedModule module_;
};

inline CechComplex cech_complex(const std::vector<Monomial>& gens, const GradedModule& M) { return CechComplex(gens, M); }

/// H^i of the Cech complex over a window. When every localization in the
/// window stabilizes along its ray, the complex is evaluated directly
/// ("cech-direct"); otherwise the cohomology is taken as the direct limit of
/// the finite Koszul stages ("cech-koszul-colimit").
inline ColimitResult local_cohomology_cech(int i, const std::vector<Monomial>& gens, const GradedModule& M,
                                           const DegreeWindow& w, const Caps& caps = {}) {
  if (i < 0) throw std::invalid_argument("local_cohomology_cech: negative index");
  const CechComplex C(gens, M);
  ColimitResult direct;
  direct.route = "cech-direct";
  direct.table = HilbertTable(w);
  direct.stabilized = true;
  for (const auto& h : w) {
    auto k = C.common_stage(h, caps.ray_cap);
    if (!k) {
      direct.stabilized = false;
      break;
    }
    const auto cochains = hom_cochains(koszul_stage(*M.ring(), gens, *k), M, h);
    const auto v = cochains.cohomology_dim(static_cast<std::size_t>(i));
    direct.table.set(h, v);
    direct.trajectory[h] = {v};
    direct.stable_stage = std::max(direct.stable_stage, *k);
  }
  if (direct.stabilized) return direct;
  auto sys = C.stages(caps.n_cap);
  auto out = colimit_cohomology(sys, i, M, w);
  out.route = "cech-koszul-colimit";
  return out;
}

inline ColimitResult local_cohomology_cech(int i, const MonomialIdeal& a, const GradedModule& M, const DegreeWindow& w,
                                           const Caps& caps = {}) {
  return local_cohomology_cech(i, a.generators(), M, w, caps);
}

/// colim_n Ext^i(R/a^n, M).
inline ColimitResult local_cohomology_ext(int i, const MonomialIdeal& a, const GradedModule& M, const DegreeWindow& w,
                                          int n_cap) {
  auto out = colim_ext(i, M.ring(), a, M, w, n_cap, false);
  out.route = "ext(R/a^n)";
  return out;
}

/// D^i_a(M) = colim_n Ext^i(a^n, M).
inline ColimitResult ideal_transform(int i, const MonomialIdeal& a, const GradedModule& M, const DegreeWindow& w,
                                     int n_cap) {
  auto out = colim_ext(i, M.ring(), a, M, w, n_cap, true);
  out.route = "ext(a^n)";
  return out;
}

/// Per-degree evidence for 0 -> Gamma -> M -> D^0 -> H^1 -> 0.
struct SequenceRow {
  Degree degree;
  std::size_t gamma = 0;
  std::size_t module = 0;
  std::size_t transform = 0;    // dim D^0
  std::size_t cohomology = 0;   // dim H^1
  std::size_t map_rank = 0;     // rank of M -> D^0
  bool gamma_in_kernel = false;
  bool exact = false;
};

struct HigherRow {
  int index = 0;  // i: compares D^i with H^{i+1}
  Degree degree;
  std::size_t transform = 0;
  std::size_t cohomology = 0;
};

struct SequenceReport {
  bool holds = false;
  bool stabilized = true;
  int stage = 0;  // the stage of a^n used for the map M -> D^0
  std::vector<SequenceRow> rows;
  std::vector<HigherRow> higher;
  std::vector<std::string> failures;
  std::vector<std::string> unstabilized;
};

/// Checks degreewise exactness of 0 -> Gamma_a(M) -> M -> D^0_a(M) -> H^1_a(M) -> 0
/// and dim D^i = dim H^{i+1} for 1 <= i <= number of generators of a. The map
/// M -> D^0 is m |-> (x |-> x m) restricted to a^n; H^1 comes from the Cech
/// route, Gamma from the torsion computation, so the three are independent.
inline SequenceReport check_four_term_sequence(const MonomialIdeal& a, const GradedModule& M, const DegreeWindow& w,
                                               const Caps& caps = {}) {
  SequenceReport rep;
  const auto gamma = torsion_submodule(a, M, w, caps.n_cap);
  const auto d0 = ideal_transform(0, a, M, w, caps.n_cap);
  const auto h1 = local_cohomology_cech(1, a, M, w, caps);
  if (!gamma.stabilized) rep.unstabilized.push_back("gamma");
  if (!d0.stabilized) rep.unstabilized.push_back("D^0");
  if (!h1.stabilized) rep.unstabilized.push_back("H^1");
  rep.stage = std::min(caps.n_cap, std::max({gamma.stable_stage, d0.stable_stage, 1}));

  const auto T = taylor_resolution(*M.ring(), ideal_power(a, rep.stage));
  const FreeComplex& F = T.complex;
  for (const auto& g : w) {
    SequenceRow row;
    row.degree = g;
    row.gamma = gamma.table.at(g);
    row.module = M.dim(g);
    row.transform = d0.table.at(g);
    row.cohomology = h1.table.at(g);
    if (F.terms.size() >= 2) {
      const Matrix insert = hom_dual(F.maps[0], F.terms[1], F.terms[0], M, g);
      row.map_rank = rank(insert);
      row.gamma_in_kernel = true;
      for (const auto& v : gamma.subspaces.at(g).basis())
        if (!gcoh::is_zero(insert.apply(v))) row.gamma_in_kernel = false;
    } else {
      // a = 0: a^n = 0, so D^0 = 0 and the map is zero.
      row.map_rank = 0;
      row.gamma_in_kernel = true;
    }
    const bool kernel_ok = row.gamma_in_kernel && row.module - row.map_rank == row.gamma;
    const bool coker_ok = row.transform >= row.map_rank && row.transform - row.map_rank == row.cohomology;
    const bool euler = row.gamma + row.transform == row.module + row.cohomology;
    row.exact = kernel_ok && coker_ok && euler;
    if (!row.exact)
      rep.failures.push_back("degree " + to_string(g) + ": gamma=" + std::to_string(row.gamma) +
                             " M=" + std::to_string(row.module) + " D0=" + std::to_string(row.transform) +
                             " H1=" + std::to_string(row.cohomology) + " rank(M->D0)=" + std::to_string(row.map_rank));
    rep.rows.push_back(std::move(row));
  }

  const int bound = std::max<int>(1, static_cast<int>(a.generators().size()));
  for (int i = 1; i <= bound; ++i) {
    const auto di = ideal_transform(i, a, M, w, caps.n_cap);
    const auto hi = local_cohomology_cech(i + 1, a, M, w, caps);
    if (!di.stabilized) rep.unstabilized.push_back("D^" + std::to_string(i));
    if (!hi.stabilized) rep.unstabilized.push_back("H^" + std::to_string(i + 1));
    for (const auto& g : w) {
      HigherRow r{i, g, di.table.at(g), hi.table.at(g)};
      if (r.transform != r.cohomology)
        rep.failures.push_back("degree " + to_string(g) + ": D^" + std::to_string(i) + "=" + std::to_string(r.transform) +
                               " but H^" + std::to_string(i + 1) + "=" + std::to_string(r.cohomology));
      rep.higher.push_back(std::move(r));
    }
  }
  rep.stabilized = rep.unstabilized.empty();
  rep.holds = rep.stabilized && rep.failures.empty();
  return rep;
}

}  // namespace gcoh
