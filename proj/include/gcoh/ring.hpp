#pragma once

// Multigraded polynomial rings over Q, their monomials and homogeneous
// elements, and monomial ideals.

#include <algorithm>
#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "gcoh/grading.hpp"
#include "gcoh/linalg.hpp"

namespace gcoh {

class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::vector<int> exponents) : exps_(std::move(exponents)) {
    for (int e : exps_)
      if (e < 0) throw std::invalid_argument("Monomial: negative exponent");
  }

  static Monomial one(std::size_t nvars) { return Monomial(std::vector<int>(nvars, 0)); }
  static Monomial variable(std::size_t nvars, std::size_t i) {
    std::vector<int> e(nvars, 0);
    e.at(i) = 1;
    return Monomial(std::move(e));
  }

  std::size_t size() const { return exps_.size(); }
  int operator[](std::size_t i) const { return exps_[i]; }
  const std::vector<int>& exponents() const { return exps_; }

  bool is_one() const {
    return std::all_of(exps_.begin(), exps_.end(), [](int e) { return e == 0; });
  }

  Monomial operator*(const Monomial& o) const {
    check_size(o);
    std::vector<int> e(exps_);
    for (std::size_t i = 0; i < e.size(); ++i) e[i] += o.exps_[i];
    return Monomial(std::move(e));
  }

  Monomial pow(int n) const {
    std::vector<int> e(exps_);
    for (auto& x : e) x *= n;
    return Monomial(std::move(e));
  }

  bool divides(const Monomial& o) const {
    check_size(o);
    for (std::size_t i = 0; i < exps_.size(); ++i)
      if (exps_[i] > o.exps_[i]) return false;
    return true;
  }

  /// o / this; requires divides(o).
  Monomial quotient_of(const Monomial& o) const {
    if (!divides(o)) throw std::invalid_argument("Monomial::quotient_of: not divisible");
    std::vector<int> e(o.exps_);
    for (std::size_t i = 0; i < e.size(); ++i) e[i] -= exps_[i];
    return Monomial(std::move(e));
  }

  Monomial lcm(const Monomial& o) const {
    check_size(o);
    std::vector<int> e(exps_);
    for (std::size_t i = 0; i < e.size(); ++i) e[i] = std::max(e[i], o.exps_[i]);
    return Monomial(std::move(e));
  }

  auto operator<=>(const Monomial&) const = default;
  bool operator==(const Monomial&) const = default;

 private:
  void check_size(const Monomial& o) const {
    if (o.exps_.size() != exps_.size()) throw std::invalid_argument("Monomial: variable count mismatch");
  }

  std::vector<int> exps_;
};

/// Finite mapping monomial -> nonzero rational coefficient.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(const Monomial& m, Rational c = 1) {
    if (sgn(c) != 0) terms_.emplace(m, std::move(c));
  }

  const std::map<Monomial, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(const Monomial& m, const Rational& c) {
    if (sgn(c) == 0) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (sgn(it->second) == 0) terms_.erase(it);
    }
  }

  Polynomial operator+(const Polynomial& o) const {
    Polynomial out = *this;
    for (const auto& [m, c] : o.terms_) out.add_term(m, c);
    return out;
  }

  Polynomial operator-() const {
    Polynomial out;
    for (const auto& [m, c] : terms_) out.terms_.emplace(m, -c);
    return out;
  }

  Polynomial operator*(const Polynomial& o) const {
    Polynomial out;
    for (const auto& [m1, c1] : terms_)
      for (const auto& [m2, c2] : o.terms_) out.add_term(m1 * m2, c1 * c2);
    return out;
  }

  Polynomial scaled(const Rational& c) const {
    Polynomial out;
    if (sgn(c) == 0) return out;
    for (const auto& [m, x] : terms_) out.terms_.emplace(m, x * c);
    return out;
  }

  bool operator==(const Polynomial&) const = default;

 private:
  std::map<Monomial, Rational> terms_;
};

inline std::string to_string(const Monomial& m, const std::vector<std::string>& names) {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] == 0) continue;
    if (!first) os << '*';
    first = false;
    os << names.at(i);
    if (m[i] > 1) os << '^' << m[i];
  }
  if (first) os << '1';
  return os.str();
}

inline std::string to_string(const Polynomial& p, const std::vector<std::string>& names) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  // Highest monomial first reads more naturally.
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    const auto& [m, c] = *it;
    Rational mag = abs(c);
    if (first) {
      if (sgn(c) < 0) os << '-';
    } else {
      os << (sgn(c) < 0 ? " - " : " + ");
    }
    first = false;
    if (m.is_one()) {
      os << mag.get_str();
    } else {
      if (mag != 1) os << mag.get_str() << '*';
      os << to_string(m, names);
    }
  }
  return os.str();
}

/// Polynomial ring Q[x_1..x_n] graded by a finitely generated abelian group,
/// with a rational functional that is strictly positive on every variable
/// degree. The functional bounds exponents, so each component is finite.
class GradedPolynomialRing {
 public:
  GradedPolynomialRing(DegreeGroup group, std::vector<std::string> names, std::vector<Degree> degrees,
                       std::vector<Rational> certificate)
      : group_(std::move(group)),
        names_(std::move(names)),
        degrees_(std::move(degrees)),
        certificate_(std::move(certificate)),
        cache_(std::make_shared<Cache>()) {
    if (names_.size() != degrees_.size())
      throw std::invalid_argument("GradedPolynomialRing: one degree per variable required");
    if (certificate_.size() != group_.free_rank())
      throw std::invalid_argument("GradedPolynomialRing: certificate must have one entry per free coordinate");
    for (std::size_t i = 0; i < degrees_.size(); ++i) {
      group_.require(degrees_[i]);
      if (sgn(weight(degrees_[i])) <= 0)
        throw std::invalid_argument("GradedPolynomialRing: certificate is not strictly positive on deg " + names_[i] +
                                    " = " + to_string(degrees_[i]));
    }
  }

  const DegreeGroup& group() const { return group_; }
  std::size_t variable_count() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  const std::vector<Degree>& variable_degrees() const { return degrees_; }
  const std::vector<Rational>& certificate() const { return certificate_; }

  Rational weight(const Degree& d) const {
    Rational w = 0;
    for (std::size_t i = 0; i < certificate_.size(); ++i) w += certificate_[i] * to_rational(d.free[i]);
    return w;
  }

  Monomial one() const { return Monomial::one(variable_count()); }
  Monomial variable(std::size_t i) const { return Monomial::variable(variable_count(), i); }

  Degree degree(const Monomial& m) const {
    if (m.size() != variable_count()) throw std::invalid_argument("monomial has wrong variable count");
    Degree d = group_.zero();
    for (std::size_t i = 0; i < m.size(); ++i)
      if (m[i] != 0) d = group_.add(d, group_.scale(degrees_[i], m[i]));
    return d;
  }

  /// Degree of a homogeneous nonzero element; nullopt for zero or mixed degree.
  std::optional<Degree> degree(const Polynomial& p) const {
    std::optional<Degree> out;
    for (const auto& [m, c] : p.terms()) {
      auto d = degree(m);
      if (out && *out != d) return std::nullopt;
      out = std::move(d);
    }
    return out;
  }

  /// Exhaustive basis of R_g. Cached; the cache is write-once per degree.
  const std::vector<Monomial>& monomials_of_degree(const Degree& g) const {
    group_.require(g);
    {
      std::lock_guard lock(cache_->mutex);
      auto it = cache_->monomials.find(g);
      if (it != cache_->monomials.end()) return *it->second;
    }
    auto list = std::make_shared<std::vector<Monomial>>();
    const Rational budget = weight(g);
    if (sgn(budget) >= 0) {
      std::vector<Rational> w;
      for (const auto& d : degrees_) w.push_back(weight(d));
      std::vector<int> e(variable_count(), 0);
      enumerate(0, budget, w, e, g, *list);
    }
    std::sort(list->begin(), list->end());
    std::lock_guard lock(cache_->mutex);
    auto [it, inserted] = cache_->monomials.emplace(g, std::move(list));
    return *it->second;
  }

  bool operator==(const GradedPolynomialRing& o) const {
    return group_ == o.group_ && names_ == o.names_ && degrees_ == o.degrees_ && certificate_ == o.certificate_;
  }

 private:
  struct Cache {
    std::mutex mutex;
    std::map<Degree, std::shared_ptr<const std::vector<Monomial>>> monomials;
  };

  void enumerate(std::size_t var, const Rational& remaining, const std::vector<Rational>& w, std::vector<int>& e,
                 const Degree& target, std::vector<Monomial>& out) const {
    if (var == e.size()) {
      if (sgn(remaining) != 0) return;
      Monomial m(e);
      if (degree(m) == target) out.push_back(std::move(m));
      return;
    }
    Rational left = remaining;
    for (int k = 0; sgn(left) >= 0; ++k) {
      e[var] = k;
      enumerate(var + 1, left, w, e, target, out);
      left -= w[var];
    }
    e[var] = 0;
  }

  DegreeGroup group_;
  std::vector<std::string> names_;
  std::vector<Degree> degrees_;
  std::vector<Rational> certificate_;
  std::shared_ptr<Cache> cache_;
};

using RingPtr = std::shared_ptr<const GradedPolynomialRing>;

/// Monomial ideal with a minimal generating set, sorted lexicographically
/// descending. No generators is the zero ideal; the generator 1 is the unit ideal.
class MonomialIdeal {
 public:
  MonomialIdeal() = default;
  MonomialIdeal(std::size_t nvars, std::vector<Monomial> generators) : nvars_(nvars) {
    for (const auto& g : generators)
      if (g.size() != nvars) throw std::invalid_argument("MonomialIdeal: generator has wrong variable count");
    std::sort(generators.begin(), generators.end());
    generators.erase(std::unique(generators.begin(), generators.end()), generators.end());
    for (std::size_t i = 0; i < generators.size(); ++i) {
      bool redundant = false;
      for (std::size_t j = 0; j < generators.size() && !redundant; ++j)
        redundant = j != i && generators[j].divides(generators[i]);
      if (!redundant) gens_.push_back(generators[i]);
    }
    std::reverse(gens_.begin(), gens_.end());
  }

  std::size_t variable_count() const { return nvars_; }
  const std::vector<Monomial>& generators() const { return gens_; }
  bool is_zero() const { return gens_.empty(); }
  bool is_unit() const { return gens_.size() == 1 && gens_[0].is_one(); }

  bool contains(const Monomial& m) const {
    return std::any_of(gens_.begin(), gens_.end(), [&](const Monomial& g) { return g.divides(m); });
  }

  /// First generator (in stored order) dividing m.
  std::optional<std::size_t> divisor_index(const Monomial& m) const {
    for (std::size_t i = 0; i < gens_.size(); ++i)
      if (gens_[i].divides(m)) return i;
    return std::nullopt;
  }

  MonomialIdeal operator*(const MonomialIdeal& o) const {
    std::vector<Monomial> prods;
    for (const auto& a : gens_)
      for (const auto& b : o.gens_) prods.push_back(a * b);
    return MonomialIdeal(nvars_, std::move(prods));
  }

  bool operator==(const MonomialIdeal&) const = default;

 private:
  std::size_t nvars_ = 0;
  std::vector<Monomial> gens_;
};

inline MonomialIdeal ideal_power(const MonomialIdeal& a, int n) {
  if (n < 1) throw std::invalid_argument("ideal_power: exponent must be >= 1");
  MonomialIdeal out = a;
  for (int k = 1; k < n; ++k) out = out * a;
  return out;
}

}  // namespace gcoh
