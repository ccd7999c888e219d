#pragma once

// Free chain complexes of graded modules and their degreewise Hom cochains.
//
// A free module F = (+)_b R(-s_b) is described by its shift list. A FreeMap
// F -> F' stores at (i, j) the coefficient of target basis element i in the
// image of source basis element j; it is homogeneous of degree s_j - s'_i.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "gcoh/grading.hpp"
#include "gcoh/linalg.hpp"
#include "gcoh/module.hpp"
#include "gcoh/ring.hpp"

namespace gcoh {

/// Consecutive isomorphic transitions required before a direct limit, a
/// torsion chain or a localization ray is declared stable. A single
/// isomorphic step can be followed by a zero map.
inline constexpr int stability_confirmations = 2;

struct FreeModuleShape {
  std::vector<Degree> shifts;

  std::size_t rank() const { return shifts.size(); }
};

struct FreeMap {
  std::size_t target_rank = 0;
  std::size_t source_rank = 0;
  std::map<std::pair<std::size_t, std::size_t>, Polynomial> entries;  // (target i, source j)

  void add(std::size_t i, std::size_t j, const Polynomial& p) {
    if (p.is_zero()) return;
    auto [it, inserted] = entries.emplace(std::make_pair(i, j), p);
    if (!inserted) {
      it->second = it->second + p;
      if (it->second.is_zero()) entries.erase(it);
    }
  }
};

/// terms[p] is F_p; maps[p-1] is the differential F_p -> F_{p-1}.
struct FreeComplex {
  std::vector<FreeModuleShape> terms;
  std::vector<FreeMap> maps;

  std::size_t length() const { return terms.empty() ? 0 : terms.size() - 1; }

  /// F_{>= from}, reindexed so that F_from sits in position 0.
  FreeComplex truncated(std::size_t from) const {
    FreeComplex out;
    for (std::size_t p = from; p < terms.size(); ++p) out.terms.push_back(terms[p]);
    for (std::size_t p = from + 1; p < terms.size(); ++p) out.maps.push_back(maps[p - 1]);
    return out;
  }
};

/// Composite of two free maps, g after f.
inline FreeMap compose(const FreeMap& g, const FreeMap& f) {
  if (g.source_rank != f.target_rank) throw std::invalid_argument("compose: rank mismatch");
  FreeMap out{g.target_rank, f.source_rank, {}};
  for (const auto& [fk, fp] : f.entries)
    for (const auto& [gk, gp] : g.entries)
      if (gk.second == fk.first) out.add(gk.first, fk.second, gp * fp);
  return out;
}

/// Checks that every entry has the degree forced by the shifts.
inline void verify_homogeneous(const GradedPolynomialRing& R, const FreeMap& f, const FreeModuleShape& source,
                               const FreeModuleShape& target) {
  for (const auto& [ij, p] : f.entries) {
    const auto want = R.group().subtract(source.shifts.at(ij.second), target.shifts.at(ij.first));
    const auto got = R.degree(p);
    if (!got || *got != want)
      throw std::logic_error("free map entry (" + std::to_string(ij.first) + "," + std::to_string(ij.second) +
                             ") is not homogeneous of degree " + to_string(want));
  }
}

/// Subsets of {0..s-1} of size p in lexicographic order.
inline std::vector<std::vector<std::size_t>> subsets_of_size(std::size_t s, std::size_t p) {
  std::vector<std::vector<std::size_t>> out;
  if (p > s) return out;
  std::vector<std::size_t> cur(p);
  for (std::size_t i = 0; i < p; ++i) cur[i] = i;
  while (true) {
    out.push_back(cur);
    std::size_t k = p;
    while (k > 0 && cur[k - 1] == s - p + (k - 1)) --k;
    if (k == 0) break;
    ++cur[k - 1];
    for (std::size_t i = k; i < p; ++i) cur[i] = cur[i - 1] + 1;
  }
  return out;
}

struct TaylorResolution {
  MonomialIdeal ideal;
  std::vector<std::vector<std::vector<std::size_t>>> subsets;  // subsets[p] labels the basis of F_p
  std::vector<std::map<std::vector<std::size_t>, std::size_t>> index;
  std::vector<std::vector<Monomial>> lcms;                     // lcm of each labelled subset
  FreeComplex complex;
};

/// Taylor resolution of R/a: F_p has one basis element per p-subset S of the
/// minimal generators, shifted by deg lcm(S), and
///   d(e_S) = sum_t (-1)^t (lcm S / lcm(S - s_t)) e_{S - s_t}.
inline TaylorResolution taylor_resolution(const GradedPolynomialRing& R, const MonomialIdeal& a) {
  TaylorResolution out;
  out.ideal = a;
  const auto& gens = a.generators();
  const std::size_t s = gens.size();
  for (std::size_t p = 0; p <= s; ++p) {
    auto subs = subsets_of_size(s, p);
    std::map<std::vector<std::size_t>, std::size_t> idx;
    std::vector<Monomial> lcms;
    FreeModuleShape shape;
    for (std::size_t k = 0; k < subs.size(); ++k) {
      idx.emplace(subs[k], k);
      Monomial l = R.one();
      for (auto g : subs[k]) l = l.lcm(gens[g]);
      shape.shifts.push_back(R.degree(l));
      lcms.push_back(std::move(l));
    }
    out.subsets.push_back(std::move(subs));
    out.index.push_back(std::move(idx));
    out.lcms.push_back(std::move(lcms));
    out.complex.terms.push_back(std::move(shape));
  }
  for (std::size_t p = 1; p <= s; ++p) {
    FreeMap d{out.subsets[p - 1].size(), out.subsets[p].size(), {}};
    for (std::size_t j = 0; j < out.subsets[p].size(); ++j) {
      const auto& S = out.subsets[p][j];
      for (std::size_t t = 0; t < S.size(); ++t) {
        auto face = S;
        face.erase(face.begin() + static_cast<std::ptrdiff_t>(t));
        const std::size_t i = out.index[p - 1].at(face);
        const Rational sign = (t % 2 == 0) ? 1 : -1;
        d.add(i, j, Polynomial(out.lcms[p - 1][i].quotient_of(out.lcms[p][j]), sign));
      }
    }
    verify_homogeneous(R, d, out.complex.terms[p], out.complex.terms[p - 1]);
    out.complex.maps.push_back(std::move(d));
  }
  return out;
}

/// Comparison chain map Taylor(b) -> Taylor(a) for b contained in a. Each
/// generator of b is sent to the first generator of a dividing it; a subset
/// S maps to (lcm S / lcm sigma(S)) e_{sigma(S)} with the sign of the sorting
/// permutation, or to 0 when sigma collapses S.
inline std::vector<FreeMap> taylor_comparison(const TaylorResolution& fine, const TaylorResolution& coarse) {
  std::vector<std::size_t> sigma;
  for (const auto& m : fine.ideal.generators()) {
    auto k = coarse.ideal.divisor_index(m);
    if (!k) throw std::invalid_argument("taylor_comparison: ideals are not nested");
    sigma.push_back(*k);
  }
  std::vector<FreeMap> out;
  for (std::size_t p = 0; p < fine.subsets.size(); ++p) {
    const std::size_t target_rank = p < coarse.subsets.size() ? coarse.subsets[p].size() : 0;
    FreeMap f{target_rank, fine.subsets[p].size(), {}};
    for (std::size_t j = 0; j < fine.subsets[p].size(); ++j) {
      std::vector<std::size_t> img;
      for (auto g : fine.subsets[p][j]) img.push_back(sigma[g]);
      // Sign of the permutation sorting img; zero if img has repeats.
      int sign = 1;
      for (std::size_t x = 0; x < img.size(); ++x)
        for (std::size_t y = x + 1; y < img.size(); ++y) {
          if (img[x] == img[y]) sign = 0;
          if (img[x] > img[y]) sign = -sign;
        }
      if (sign == 0) continue;
      std::sort(img.begin(), img.end());
      const std::size_t i = coarse.index[p].at(img);
      f.add(i, j, Polynomial(coarse.lcms[p][i].quotient_of(fine.lcms[p][j]), Rational(sign)));
    }
    out.push_back(std::move(f));
  }
  return out;
}

/// A directed system of free complexes stage(1) <- stage(2) <- ... with
/// transition chain maps stage(n+1) -> stage(n), one FreeMap per position.
struct FreeSystem {
  std::string name;
  int cap = 0;
  std::vector<FreeComplex> stages;                   // stages[n-1] is stage n
  std::vector<std::vector<FreeMap>> transitions;     // transitions[n-1]: stage n+1 -> stage n
  std::function<void(FreeSystem&)> extend;           // appends the next stage and its transition, or sets `halted`
  std::string halted;                                // why no further stage can be built

  int stage_count() const { return static_cast<int>(stages.size()); }

  /// Builds stages up to n (bounded by cap); false if stage n is unavailable.
  bool ensure(int n) {
    while (stage_count() < std::min(n, cap) && halted.empty()) extend(*this);
    return stage_count() >= n;
  }
};

/// Largest generator count of a^n whose Taylor resolution (2^s basis
/// elements) is still built.
inline constexpr std::size_t taylor_generator_limit = 16;

inline FreeSystem taylor_power_system(const GradedPolynomialRing& R, const MonomialIdeal& a, int n_cap,
                                      bool ideal_side) {
  FreeSystem sys;
  sys.name = ideal_side ? "taylor(a^n)" : "taylor(R/a^n)";
  sys.cap = n_cap;
  auto last = std::make_shared<std::optional<TaylorResolution>>();
  sys.extend = [R, a, ideal_side, last](FreeSystem& self) {
    const int n = self.stage_count() + 1;
    const auto power = ideal_power(a, n);
    if (power.generators().size() > taylor_generator_limit) {
      self.halted = "a^" + std::to_string(n) + " has " + std::to_string(power.generators().size()) +
                    " minimal generators; its Taylor resolution is too large to build";
      return;
    }
    auto next = taylor_resolution(R, power);
    if (*last) {
      auto maps = taylor_comparison(next, **last);
      if (ideal_side) maps.erase(maps.begin());
      self.transitions.push_back(std::move(maps));
    }
    self.stages.push_back(ideal_side ? next.complex.truncated(1) : next.complex);
    *last = std::move(next);
  };
  return sys;
}

/// Koszul chain complex K(f_1^k, ..., f_s^k): F_p has one basis element per
/// p-subset S, shifted by k deg f_S, and d(e_S) = sum_t (-1)^t f_{s_t}^k e_{S - s_t}.
inline FreeComplex koszul_stage(const GradedPolynomialRing& R, const std::vector<Monomial>& gens, int k) {
  const std::size_t s = gens.size();
  FreeComplex c;
  std::vector<std::map<std::vector<std::size_t>, std::size_t>> idx;
  std::vector<std::vector<std::vector<std::size_t>>> subs;
  for (std::size_t p = 0; p <= s; ++p) {
    subs.push_back(subsets_of_size(s, p));
    std::map<std::vector<std::size_t>, std::size_t> m;
    FreeModuleShape shape;
    for (std::size_t j = 0; j < subs[p].size(); ++j) {
      m.emplace(subs[p][j], j);
      Monomial f = R.one();
      for (auto g : subs[p][j]) f = f * gens[g];
      shape.shifts.push_back(R.degree(f.pow(k)));
    }
    idx.push_back(std::move(m));
    c.terms.push_back(std::move(shape));
  }
  for (std::size_t p = 1; p <= s; ++p) {
    FreeMap d{subs[p - 1].size(), subs[p].size(), {}};
    for (std::size_t j = 0; j < subs[p].size(); ++j) {
      const auto& S = subs[p][j];
      for (std::size_t t = 0; t < S.size(); ++t) {
        auto face = S;
        face.erase(face.begin() + static_cast<std::ptrdiff_t>(t));
        d.add(idx[p - 1].at(face), j, Polynomial(gens[S[t]].pow(k), Rational(t % 2 == 0 ? 1 : -1)));
      }
    }
    verify_homogeneous(R, d, c.terms[p], c.terms[p - 1]);
    c.maps.push_back(std::move(d));
  }
  return c;
}

/// Koszul complexes for k = 1..cap; Hom of these into M are the finite
/// stages whose colimit is the Cech complex of M. The transition
/// K(f^{k+1}) -> K(f^k) multiplies e_S by f_S.
inline FreeSystem koszul_power_system(const GradedPolynomialRing& R, const std::vector<Monomial>& gens, int cap) {
  FreeSystem sys;
  sys.name = "koszul(f^k)";
  sys.cap = cap;
  sys.extend = [R, gens](FreeSystem& self) {
    const int k = self.stage_count() + 1;
    if (k > 1) {
      const std::size_t s = gens.size();
      std::vector<FreeMap> maps;
      for (std::size_t p = 0; p <= s; ++p) {
        const auto subs = subsets_of_size(s, p);
        FreeMap f{subs.size(), subs.size(), {}};
        for (std::size_t j = 0; j < subs.size(); ++j) {
          Monomial prod = R.one();
          for (auto g : subs[j]) prod = prod * gens[g];
          f.add(j, j, Polynomial(prod));
        }
        maps.push_back(std::move(f));
      }
      self.transitions.push_back(std::move(maps));
    }
    self.stages.push_back(koszul_stage(R, gens, k));
  };
  return sys;
}

/// Hom(F, N)_g = (+)_b N_{g + s_b}, as a list of component blocks.
struct HomBlocks {
  std::vector<const Component*> blocks;
  std::vector<std::size_t> offsets;
  std::size_t dim = 0;
};

inline HomBlocks hom_blocks(const FreeModuleShape& F, const GradedModule& N, const Degree& g) {
  HomBlocks out;
  for (const auto& s : F.shifts) {
    const auto& c = N.component(N.group().add(g, s));
    out.blocks.push_back(&c);
    out.offsets.push_back(out.dim);
    out.dim += c.dim();
  }
  return out;
}

/// Matrix of precomposition with f: Hom(target, N)_g -> Hom(source, N)_g.
inline Matrix hom_dual(const FreeMap& f, const FreeModuleShape& source, const FreeModuleShape& target,
                       const GradedModule& N, const Degree& g) {
  const auto src = hom_blocks(target, N, g);  // domain of the dual map
  const auto dst = hom_blocks(source, N, g);
  Matrix out(dst.dim, src.dim);
  for (const auto& [ij, p] : f.entries) {
    const auto [i, j] = ij;
    const Component& from = *src.blocks[i];
    const Component& to = *dst.blocks[j];
    for (std::size_t c = 0; c < from.dim(); ++c) {
      Vector e(from.dim());
      e[c] = 1;
      auto img = to.reduce(N.multiply_free(from, to, from.lift(e), p));
      for (std::size_t r = 0; r < to.dim(); ++r)
        if (sgn(img[r]) != 0) out(dst.offsets[j] + r, src.offsets[i] + c) += img[r];
    }
  }
  return out;
}

/// A cochain complex of finite-dimensional spaces C^0 -> C^1 -> ...
struct DegreeCochains {
  std::vector<std::size_t> dims;
  std::vector<Matrix> differentials;  // differentials[p]: C^p -> C^{p+1}

  std::size_t dim(std::size_t p) const { return p < dims.size() ? dims[p] : 0; }

  std::size_t rank_of(std::size_t p) const { return p < differentials.size() ? gcoh::rank(differentials[p]) : 0; }

  std::size_t cohomology_dim(std::size_t p) const {
    if (p >= dims.size()) return 0;
    const std::size_t in = p == 0 ? 0 : rank_of(p - 1);
    return dims[p] - rank_of(p) - in;
  }

  /// Basis of cocycles Z^p.
  std::vector<Vector> cocycles(std::size_t p) const {
    if (p >= dims.size()) return {};
    if (p >= differentials.size()) return Subspace::whole(dims[p]).basis();
    return kernel(differentials[p]);
  }

  /// Coboundaries B^p as a subspace of C^p.
  Subspace coboundaries(std::size_t p) const {
    if (p >= dims.size()) return Subspace(0);
    if (p == 0) return Subspace(dims[0]);
    return Subspace::column_space(differentials[p - 1]);
  }

  bool squares_to_zero() const {
    for (std::size_t p = 0; p + 1 < differentials.size(); ++p)
      if (!(differentials[p + 1] * differentials[p]).is_zero()) return false;
    return true;
  }
};

/// Hom(F, N) in degree g.
inline DegreeCochains hom_cochains(const FreeComplex& F, const GradedModule& N, const Degree& g) {
  DegreeCochains out;
  for (const auto& t : F.terms) out.dims.push_back(hom_blocks(t, N, g).dim);
  for (std::size_t p = 0; p < F.maps.size(); ++p)
    out.differentials.push_back(hom_dual(F.maps[p], F.terms[p + 1], F.terms[p], N, g));
  return out;
}

/// A chain complex of finite-dimensional spaces ... -> C_1 -> C_0.
struct DegreeChains {
  std::vector<std::size_t> dims;
  std::vector<Matrix> differentials;  // differentials[p-1]: C_p -> C_{p-1}

  std::size_t rank_of(std::size_t p) const {
    return p >= 1 && p - 1 < differentials.size() ? gcoh::rank(differentials[p - 1]) : 0;
  }

  std::size_t homology_dim(std::size_t p) const {
    if (p >= dims.size()) return 0;
    return dims[p] - rank_of(p) - rank_of(p + 1);
  }

  bool squares_to_zero() const {
    for (std::size_t p = 0; p + 1 < differentials.size(); ++p)
      if (!(differentials[p] * differentials[p + 1]).is_zero()) return false;
    return true;
  }
};

/// Degree-g strand of a free chain complex: F_p,g = (+)_b R_{g - s_b}.
inline DegreeChains chain_in_degree(const RingPtr& R, const FreeComplex& F, const Degree& g) {
  const GradedModule Rmod = GradedModule::ring_module(R);
  // Hom(R(s), R)_0 = R_{-s}, so the strand is read through R's components.
  auto blocks = [&](const FreeModuleShape& shape) {
    HomBlocks b;
    for (const auto& s : shape.shifts) {
      const auto& c = Rmod.component(R->group().subtract(g, s));
      b.blocks.push_back(&c);
      b.offsets.push_back(b.dim);
      b.dim += c.dim();
    }
    return b;
  };
  DegreeChains out;
  for (const auto& t : F.terms) out.dims.push_back(blocks(t).dim);
  for (std::size_t p = 0; p < F.maps.size(); ++p) {
    const auto src = blocks(F.terms[p + 1]);
    const auto dst = blocks(F.terms[p]);
    Matrix m(dst.dim, src.dim);
    for (const auto& [ij, poly] : F.maps[p].entries) {
      const auto [i, j] = ij;
      const Component& from = *src.blocks[j];
      const Component& to = *dst.blocks[i];
      for (std::size_t c = 0; c < from.dim(); ++c) {
        Vector e(from.dim());
        e[c] = 1;
        auto img = to.reduce(Rmod.multiply_free(from, to, from.lift(e), poly));
        for (std::size_t r = 0; r < to.dim(); ++r)
          if (sgn(img[r]) != 0) m(dst.offsets[i] + r, src.offsets[j] + c) += img[r];
      }
    }
    out.differentials.push_back(std::move(m));
  }
  return out;
}

}  // namespace gcoh
