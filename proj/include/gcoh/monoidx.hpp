#pragma once

// The monoid algebra Q[Q>=0] with its Q-grading, the ideals
// a_tau = <e_alpha | alpha >= tau> and m = <e_alpha | alpha > 0>, and the
// witness homomorphisms f_K = (pi_1, ..., pi_K): m -> (+)_k (R/a_{1/k})(-k).
//
// Everything here is finite and exact; a certified statement about f_K is a
// statement about that K only.

#include <gmpxx.h>

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "gcoh/linalg.hpp"

namespace gcoh::monoid {

/// Finite Q-linear combination of basis elements e_alpha, alpha in Q>=0.
class Element {
 public:
  Element() = default;

  static Element basis(const Rational& alpha, const Rational& coeff = 1) {
    if (sgn(alpha) < 0) throw std::invalid_argument("monoid element: exponent must be nonnegative");
    Element e;
    e.add(alpha, coeff);
    return e;
  }

  void add(const Rational& alpha, const Rational& coeff) {
    if (sgn(alpha) < 0) throw std::invalid_argument("monoid element: exponent must be nonnegative");
    if (sgn(coeff) == 0) return;
    auto [it, inserted] = terms_.emplace(alpha, coeff);
    if (!inserted) {
      it->second += coeff;
      if (sgn(it->second) == 0) terms_.erase(it);
    }
  }

  const std::map<Rational, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  std::optional<Rational> min_exponent() const {
    if (terms_.empty()) return std::nullopt;
    return terms_.begin()->first;
  }

  Element operator+(const Element& o) const {
    Element out = *this;
    for (const auto& [a, c] : o.terms_) out.add(a, c);
    return out;
  }

  /// Homogeneous iff a single exponent occurs.
  bool is_homogeneous() const { return terms_.size() <= 1; }

  bool operator==(const Element&) const = default;

 private:
  std::map<Rational, Rational> terms_;
};

/// Convolution product: e_alpha * e_beta = e_{alpha + beta}.
inline Element multiply(const Element& u, const Element& v) {
  Element out;
  for (const auto& [a, c] : u.terms())
    for (const auto& [b, d] : v.terms()) out.add(a + b, c * d);
  return out;
}

inline std::string to_string(const Element& u) {
  if (u.is_zero()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [a, c] : u.terms()) {
    if (!first) s += sgn(c) < 0 ? " - " : " + ";
    else if (sgn(c) < 0) s += "-";
    first = false;
    const Rational mag = abs(c);
    if (mag != 1) s += mag.get_str() + "*";
    s += "e_" + a.get_str();
  }
  return s;
}

/// a_tau = <e_alpha | alpha >= tau> for tau > 0, or m = <e_alpha | alpha > 0>.
class TailIdeal {
 public:
  static TailIdeal at_least(const Rational& tau) {
    if (sgn(tau) <= 0) throw std::invalid_argument("TailIdeal: threshold must be positive (use maximal() for m)");
    return TailIdeal(tau, false);
  }
  static TailIdeal maximal() { return TailIdeal(Rational(0), true); }

  const Rational& threshold() const { return tau_; }
  bool strict() const { return strict_; }

  bool contains_exponent(const Rational& alpha) const { return strict_ ? alpha > tau_ : alpha >= tau_; }

  bool contains(const Element& u) const {
    for (const auto& [a, c] : u.terms())
      if (!contains_exponent(a)) return false;
    return true;
  }

  std::string describe() const { return strict_ ? "m" : "a_" + tau_.get_str(); }

 private:
  TailIdeal(Rational tau, bool strict) : tau_(std::move(tau)), strict_(strict) {}

  Rational tau_;
  bool strict_;
};

inline bool tail_membership(const TailIdeal& I, const Element& u) { return I.contains(u); }

struct IdempotencyWitness {
  Rational alpha;
  Element factor;   // e_{alpha/2}
  Element product;  // factor * factor
  bool factor_in_m = false;
  bool product_matches = false;

  bool verified() const { return factor_in_m && product_matches; }
};

/// e_alpha = e_{alpha/2} * e_{alpha/2}, both factors in m.
inline IdempotencyWitness idempotency_witness(const Rational& alpha) {
  if (sgn(alpha) <= 0) throw std::invalid_argument("idempotency_witness: alpha must be positive");
  IdempotencyWitness w;
  w.alpha = alpha;
  w.factor = Element::basis(alpha / 2);
  w.product = multiply(w.factor, w.factor);
  w.factor_in_m = TailIdeal::maximal().contains(w.factor);
  w.product_matches = w.product == Element::basis(alpha);
  return w;
}

struct NonFiniteGenerationWitness {
  Rational bound;         // mu: every element of <S> has all exponents >= mu
  Element witness;        // e_{mu/2}
  bool witness_in_m = false;
  bool below_bound = false;  // mu/2 < mu, so the witness is not in <S>

  bool verified() const { return witness_in_m && below_bound; }
};

/// For a finite S in m, e_{mu/2} (mu the smallest exponent in S) lies in m
/// but not in <S>: every product r*s has exponents >= min exponent of s >= mu.
inline NonFiniteGenerationWitness non_finite_generation_witness(const std::vector<Element>& S) {
  if (S.empty()) throw std::invalid_argument("non_finite_generation_witness: S must be nonempty");
  const auto m = TailIdeal::maximal();
  std::optional<Rational> mu;
  for (const auto& s : S) {
    if (s.is_zero() || !m.contains(s))
      throw std::invalid_argument("non_finite_generation_witness: every element of S must be a nonzero element of m");
    const Rational lo = *s.min_exponent();
    if (!mu || lo < *mu) mu = lo;
  }
  NonFiniteGenerationWitness w;
  w.bound = *mu;
  w.witness = Element::basis(*mu / 2);
  w.witness_in_m = m.contains(w.witness);
  // Certificate: the exponent bound holds for every generator, and the
  // witness exponent lies strictly below it.
  bool bound_holds = true;
  for (const auto& s : S) bound_holds = bound_holds && *s.min_exponent() >= w.bound;
  w.below_bound = bound_holds && *w.witness.min_exponent() < w.bound;
  return w;
}

/// pi_k: m -> (R/a_{1/k})(-k), e_beta |-> class of e_beta, homogeneous of degree k.
struct Projection {
  int level = 1;        // k
  Rational shift;       // the degree g_k = k
  TailIdeal kills = TailIdeal::at_least(Rational(1));

  /// Class of u in R/a_{1/k}: the terms with exponent < 1/k.
  Element apply(const Element& u) const {
    Element out;
    for (const auto& [a, c] : u.terms())
      if (!kills.contains_exponent(a)) out.add(a, c);
    return out;
  }

  /// Degree of the image of e_beta in (R/a_{1/k})(-k).
  Rational image_degree(const Rational& beta) const { return beta + shift; }
};

inline Projection projection(int k) {
  if (k < 1) throw std::invalid_argument("projection: level must be >= 1");
  return Projection{k, Rational(k), TailIdeal::at_least(Rational(1, k))};
}

struct WitnessHom {
  int truncation = 0;  // K
  std::vector<Projection> components;

  static WitnessHom zero() { return {}; }

  /// Components of f_K(e_beta) that are nonzero.
  std::vector<int> nonzero_levels(const Rational& beta) const {
    std::vector<int> out;
    const auto e = Element::basis(beta);
    for (const auto& p : components)
      if (!p.apply(e).is_zero()) out.push_back(p.level);
    return out;
  }
};

struct WitnessCertificate {
  int truncation = 0;
  std::vector<Rational> support;                  // degrees with a nonzero component
  std::vector<std::pair<int, Rational>> probes;   // (k, beta) with pi_k(e_beta) != 0
  bool well_defined = false;                      // every probe hits finitely many components
  bool distinct_degrees = false;
};

/// f_K with shifts g_k = k.
inline WitnessHom build_witness_hom(int K) {
  if (K < 1) throw std::invalid_argument("build_witness_hom: K must be >= 1");
  WitnessHom f;
  f.truncation = K;
  for (int k = 1; k <= K; ++k) f.components.push_back(projection(k));
  return f;
}

/// Certifies that each pi_k is nonzero by evaluating pi_k(e_{1/(k+1)}) and
/// that each probe e_beta in m has finitely many nonzero components.
inline WitnessCertificate certify(const WitnessHom& f, const std::vector<Rational>& extra_probes = {}) {
  WitnessCertificate c;
  c.truncation = f.truncation;
  c.well_defined = true;
  std::vector<Rational> probes = extra_probes;
  for (const auto& p : f.components) {
    const Rational beta(1, p.level + 1);
    probes.push_back(beta);
    if (!p.apply(Element::basis(beta)).is_zero()) {
      c.support.push_back(p.shift);
      c.probes.emplace_back(p.level, beta);
    }
  }
  for (const auto& beta : probes) {
    if (!(sgn(beta) > 0)) {
      c.well_defined = false;
      continue;
    }
    // Finitely many by construction of the list; check the count against
    // the closed form #{k <= K : 1/k > beta}.
    std::size_t expected = 0;
    for (int k = 1; k <= f.truncation; ++k)
      if (Rational(1, k) > beta) ++expected;
    if (f.nonzero_levels(beta).size() != expected) c.well_defined = false;
  }
  c.distinct_degrees = true;
  for (std::size_t i = 1; i < c.support.size(); ++i)
    if (!(c.support[i - 1] < c.support[i])) c.distinct_degrees = false;
  return c;
}

/// Number of degrees carrying a nonzero component.
inline std::size_t graded_component_count(const WitnessHom& f) { return certify(f).support.size(); }

}  // namespace gcoh::monoid
