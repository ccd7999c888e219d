#pragma once

#include <memory>
#include <random>
#include <string>
#include <vector>

#include <ostream>

#include "gcoh/module.hpp"
#include "gcoh/ring.hpp"

namespace gcoh {

inline void PrintTo(const Degree& d, std::ostream* os) { *os << to_string(d); }

/// Readable gtest output: nonzero entries only.
inline void PrintTo(const HilbertTable& t, std::ostream* os) {
  *os << "{";
  bool first = true;
  for (const auto& [g, v] : t.values()) {
    if (!v) continue;
    *os << (first ? "" : ", ") << to_string(g) << ":" << v;
    first = false;
  }
  *os << "} on " << t.window().size() << " degrees";
}

}  // namespace gcoh

namespace fixture {

using namespace gcoh;

inline RingPtr line() {
  auto Z = DegreeGroup::free_group(1);
  return std::make_shared<GradedPolynomialRing>(Z, std::vector<std::string>{"x"}, std::vector<Degree>{Z.make({1})},
                                                std::vector<Rational>{1});
}

/// K[x,y] with deg x = (1,0), deg y = (0,1).
inline RingPtr fine_plane() {
  auto Z2 = DegreeGroup::free_group(2);
  return std::make_shared<GradedPolynomialRing>(Z2, std::vector<std::string>{"x", "y"},
                                                std::vector<Degree>{Z2.make({1, 0}), Z2.make({0, 1})},
                                                std::vector<Rational>{1, 1});
}

/// K[x,y] with deg x = deg y = 1.
inline RingPtr standard_plane() {
  auto Z = DegreeGroup::free_group(1);
  return std::make_shared<GradedPolynomialRing>(Z, std::vector<std::string>{"x", "y"},
                                                std::vector<Degree>{Z.make({1}), Z.make({1})}, std::vector<Rational>{1});
}

/// K[x,y] over Z + Z/2 with deg x = (1;1), deg y = (1;0).
inline RingPtr twisted_plane() {
  DegreeGroup G(1, {2});
  return std::make_shared<GradedPolynomialRing>(G, std::vector<std::string>{"x", "y"},
                                                std::vector<Degree>{G.make({1}, {1}), G.make({1}, {0})},
                                                std::vector<Rational>{1});
}

inline Monomial mono(std::vector<int> e) { return Monomial(std::move(e)); }

inline MonomialIdeal ideal(std::size_t n, std::vector<std::vector<int>> gens) {
  std::vector<Monomial> ms;
  for (auto& g : gens) ms.push_back(Monomial(std::move(g)));
  return MonomialIdeal(n, ms);
}

inline Degree deg(const GradedPolynomialRing& R, std::vector<Int> free, std::vector<Int> torsion = {}) {
  return R.group().make(std::move(free), std::move(torsion));
}

/// A random monomial ideal with 1..max_gens generators, exponents in [0, max_exp].
inline MonomialIdeal random_ideal(std::mt19937& rng, std::size_t nvars, int max_gens, int max_exp) {
  std::uniform_int_distribution<int> count(1, max_gens), e(0, max_exp);
  std::vector<Monomial> gens;
  const int k = count(rng);
  for (int i = 0; i < k; ++i) {
    std::vector<int> x(nvars);
    bool one = true;
    for (auto& v : x) {
      v = e(rng);
      if (v) one = false;
    }
    if (one) x[rng() % nvars] = 1;
    gens.emplace_back(x);
  }
  return MonomialIdeal(nvars, gens);
}

inline std::vector<std::vector<int>> exps(const MonomialIdeal& a) {
  std::vector<std::vector<int>> out;
  for (const auto& m : a.generators()) out.push_back(m.exponents());
  return out;
}

inline std::vector<std::vector<Int>> free_degrees(const GradedPolynomialRing& R) {
  std::vector<std::vector<Int>> out;
  for (const auto& d : R.variable_degrees()) out.push_back(d.free);
  return out;
}

/// A random finitely presented module: 1..2 generators in degrees drawn from
/// `gen_pool`, 0..2 relations whose columns have random rational coefficients.
inline GradedModule random_module(std::mt19937& rng, const RingPtr& R, const std::vector<Degree>& gen_pool,
                                  const std::vector<Degree>& steps) {
  const auto& G = R->group();
  std::uniform_int_distribution<int> ngens(1, 2), nrels(0, 2), coeff(-3, 3);
  std::vector<Degree> gens;
  const int g = ngens(rng);
  for (int i = 0; i < g; ++i) gens.push_back(gen_pool[rng() % gen_pool.size()]);
  std::vector<Relation> rels;
  const int r = nrels(rng);
  for (int k = 0; k < r; ++k) {
    const Degree col = G.add(gens[rng() % gens.size()], steps[rng() % steps.size()]);
    std::vector<Polynomial> entries;
    bool nonzero = false;
    for (const auto& d : gens) {
      Polynomial p;
      for (const auto& m : R->monomials_of_degree(G.subtract(col, d))) {
        const int c = coeff(rng);
        if (c) p.add_term(m, c);
      }
      nonzero = nonzero || !p.is_zero();
      entries.push_back(std::move(p));
    }
    if (nonzero) rels.push_back(Relation{col, std::move(entries)});
  }
  return GradedModule(R, gens, rels);
}

}  // namespace fixture
