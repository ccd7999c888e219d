#pragma once

// Graded Hom and Ext computed degreewise, and direct limits of Ext along the
// canonical projective systems (R/a^n) and (a^n).

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "gcoh/complex.hpp"
#include "gcoh/grading.hpp"
#include "gcoh/linalg.hpp"
#include "gcoh/module.hpp"
#include "gcoh/ring.hpp"

namespace gcoh {

/// The generator/relation free presentation F_1 -> F_0 of a module.
inline FreeComplex presentation_complex(const GradedModule& M) {
  FreeComplex F;
  F.terms.push_back(FreeModuleShape{M.generator_degrees()});
  FreeModuleShape rel;
  FreeMap d{M.generator_degrees().size(), M.relations().size(), {}};
  for (std::size_t k = 0; k < M.relations().size(); ++k) {
    rel.shifts.push_back(M.relations()[k].degree);
    for (std::size_t j = 0; j < M.generator_degrees().size(); ++j) d.add(j, k, M.relations()[k].entries[j]);
  }
  F.terms.push_back(std::move(rel));
  F.maps.push_back(std::move(d));
  return F;
}

/// Degree-g homomorphisms M -> N(g). Each basis element is the stacked list of
/// generator images, generator j contributing a vector of N_{d_j + g}.
struct GradedHomSpace {
  Degree degree;
  std::vector<Vector> basis;
  HomBlocks layout;

  std::size_t dim() const { return basis.size(); }
};

inline GradedHomSpace graded_hom(const GradedModule& M, const GradedModule& N, const Degree& g) {
  if (!(*M.ring() == *N.ring())) throw std::invalid_argument("graded_hom: modules over different rings");
  const auto F = presentation_complex(M);
  GradedHomSpace out;
  out.degree = g;
  out.layout = hom_blocks(F.terms[0], N, g);
  const Matrix constraints = hom_dual(F.maps[0], F.terms[1], F.terms[0], N, g);
  out.basis = constraints.rows() == 0 ? Subspace::whole(out.layout.dim).basis() : kernel(constraints);
  return out;
}

inline HilbertTable graded_hom_table(const GradedModule& M, const GradedModule& N, const DegreeWindow& w) {
  HilbertTable t(w);
  for (const auto& g : w) t.set(g, graded_hom(M, N, g).dim());
  return t;
}

/// Ext^i(R/a, N) degreewise, from Hom(Taylor(a), N).
inline HilbertTable graded_ext(int i, const RingPtr& R, const MonomialIdeal& a, const GradedModule& N,
                               const DegreeWindow& w) {
  if (i < 0) throw std::invalid_argument("graded_ext: negative index");
  const auto T = taylor_resolution(*R, a);
  HilbertTable t(w);
  for (const auto& g : w) t.set(g, hom_cochains(T.complex, N, g).cohomology_dim(static_cast<std::size_t>(i)));
  return t;
}

/// Outcome of a direct-limit computation over stages 1..cap.
struct ColimitResult {
  HilbertTable table;
  bool stabilized = false;
  int stable_stage = 0;  // first n from which the transitions are isomorphisms on the whole window
  std::string route;
  std::map<Degree, std::vector<std::size_t>> trajectory;  // per degree, dims at stages 1..cap
  std::string note;                                       // why stages ran out early, if they did
};

namespace detail {

/// Position i of the Hom cochain complex of a stage, with cocycles and
/// coboundaries. Positions beyond the complex are zero.
struct StageSlice {
  std::size_t dim = 0;
  std::vector<Vector> cocycles;
  Subspace coboundaries;
  std::size_t cohomology = 0;
};

inline StageSlice slice(const FreeComplex& F, std::size_t i, const GradedModule& N, const Degree& g) {
  StageSlice s;
  if (i >= F.terms.size()) {
    s.coboundaries = Subspace(0);
    return s;
  }
  s.dim = hom_blocks(F.terms[i], N, g).dim;
  if (i < F.maps.size())
    s.cocycles = kernel(hom_dual(F.maps[i], F.terms[i + 1], F.terms[i], N, g));
  else
    s.cocycles = Subspace::whole(s.dim).basis();
  if (i == 0)
    s.coboundaries = Subspace(s.dim);
  else
    s.coboundaries = Subspace::column_space(hom_dual(F.maps[i - 1], F.terms[i], F.terms[i - 1], N, g));
  s.cohomology = s.cocycles.size() - s.coboundaries.dim();
  return s;
}

/// Rank of the map induced on H^i by a transition stage(n+1) -> stage(n).
inline std::size_t induced_rank(const FreeSystem& sys, int n, std::size_t i, const GradedModule& N, const Degree& g,
                                const StageSlice& from, const StageSlice& to) {
  if (from.cohomology == 0 || to.cohomology == 0) return 0;
  const auto& chain = sys.transitions[static_cast<std::size_t>(n - 1)];
  const auto& lower = sys.stages[static_cast<std::size_t>(n - 1)];
  const auto& upper = sys.stages[static_cast<std::size_t>(n)];
  const Matrix phi = hom_dual(chain.at(i), upper.terms[i], lower.terms[i], N, g);
  std::vector<Vector> images;
  for (const auto& z : from.cocycles) images.push_back(phi.apply(z));
  const Subspace with = to.coboundaries.plus(Subspace(std::move(images), to.dim));
  return with.dim() - to.coboundaries.dim();
}

}  // namespace detail

/// Degreewise colim_n H^i(Hom(stage n, N)). Stabilization is declared once
/// `stability_confirmations` consecutive transitions induce isomorphisms at
/// every window degree; stable_stage is the first stage of that run. Stages
/// are built only up to that point. Without it the result is flagged
/// unstabilized and carries the trajectory up to the cap.
inline ColimitResult colimit_cohomology(FreeSystem& sys, int i, const GradedModule& N, const DegreeWindow& w) {
  if (i < 0) throw std::invalid_argument("colimit_cohomology: negative index");
  const auto pos = static_cast<std::size_t>(i);
  ColimitResult out;
  out.route = sys.name;
  out.table = HilbertTable(w);
  std::vector<detail::StageSlice> prev;
  int streak = 0;
  for (int n = 1; sys.ensure(n); ++n) {
    std::vector<detail::StageSlice> cur;
    bool iso = n > 1;
    std::size_t k = 0;
    for (const auto& g : w) {
      cur.push_back(detail::slice(sys.stages[static_cast<std::size_t>(n - 1)], pos, N, g));
      out.trajectory[g].push_back(cur.back().cohomology);
      if (iso) {
        const auto& a = prev[k];
        const auto& b = cur.back();
        iso = a.cohomology == b.cohomology && detail::induced_rank(sys, n - 1, pos, N, g, a, b) == a.cohomology;
      }
      ++k;
    }
    streak = iso ? streak + 1 : 0;
    if (streak == stability_confirmations) {
      out.stabilized = true;
      out.stable_stage = n - streak;
      break;
    }
    prev = std::move(cur);
  }
  if (!out.stabilized) out.note = sys.halted;
  for (const auto& g : w) out.table.set(g, out.trajectory[g].empty() ? 0 : out.trajectory[g].back());
  return out;
}

/// colim_n Ext^i(R/a^n, N) (local cohomology) or, with `ideal_side`,
/// colim_n Ext^i(a^n, N) (ideal transforms), over stages n = 1..n_cap.
inline ColimitResult colim_ext(int i, const RingPtr& R, const MonomialIdeal& a, const GradedModule& N,
                               const DegreeWindow& w, int n_cap, bool ideal_side) {
  if (n_cap < 2) throw std::invalid_argument("colim_ext: n_cap must be at least 2");
  auto sys = taylor_power_system(*R, a, n_cap, ideal_side);
  return colimit_cohomology(sys, i, N, w);
}

}  // namespace gcoh
