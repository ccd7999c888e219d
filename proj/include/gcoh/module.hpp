#pragma once

// Finitely presented graded modules (cokernels of homogeneous matrices between
// shifted free modules) and their degree components as exact vector spaces.
//
// Shift convention: M(s)_d = M_{s+d}. A generator of degree d spans a copy of
// R(-d), so R(-3) over Q[x] has its generator in degree 3.

#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "gcoh/grading.hpp"
#include "gcoh/linalg.hpp"
#include "gcoh/ring.hpp"

namespace gcoh {

/// Basis element m * e_j of a free module component.
struct FreeBasisElement {
  std::size_t generator;
  Monomial monomial;

  auto operator<=>(const FreeBasisElement&) const = default;
  bool operator==(const FreeBasisElement&) const = default;
};

/// One column of the relation matrix: a homogeneous element of the free module.
struct Relation {
  Degree degree;
  std::vector<Polynomial> entries;  // one per generator
};

/// The vector space M_g = F_g / U_g, where F_g has the free monomial basis and
/// U_g is the span of the relations in degree g.
class Component {
 public:
  Component(Degree degree, std::vector<FreeBasisElement> free_basis, std::vector<Vector> relation_vectors)
      : degree_(std::move(degree)), free_basis_(std::move(free_basis)) {
    for (std::size_t i = 0; i < free_basis_.size(); ++i) index_.emplace(free_basis_[i], i);
    relations_ = Subspace(std::move(relation_vectors), free_basis_.size());
    std::vector<bool> pivot(free_basis_.size(), false);
    for (auto p : relations_.pivots()) pivot[p] = true;
    for (std::size_t i = 0; i < free_basis_.size(); ++i)
      if (!pivot[i]) quotient_coords_.push_back(i);
  }

  const Degree& degree() const { return degree_; }
  std::size_t dim() const { return quotient_coords_.size(); }
  std::size_t free_dim() const { return free_basis_.size(); }
  const std::vector<FreeBasisElement>& free_basis() const { return free_basis_; }
  const Subspace& relations() const { return relations_; }

  /// Free basis elements whose classes form the basis of M_g.
  std::vector<FreeBasisElement> basis_labels() const {
    std::vector<FreeBasisElement> out;
    for (auto i : quotient_coords_) out.push_back(free_basis_[i]);
    return out;
  }

  std::optional<std::size_t> find(const FreeBasisElement& e) const {
    auto it = index_.find(e);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  /// Coordinates in the quotient basis of the class of a free vector.
  Vector reduce(const Vector& free_vec) const {
    const Vector nf = relations_.reduce(free_vec);
    Vector out(dim());
    for (std::size_t i = 0; i < quotient_coords_.size(); ++i) out[i] = nf[quotient_coords_[i]];
    return out;
  }

  /// The canonical free representative of a quotient vector.
  Vector lift(const Vector& q) const {
    if (q.size() != dim()) throw std::invalid_argument("Component::lift: dimension mismatch");
    Vector out(free_dim());
    for (std::size_t i = 0; i < quotient_coords_.size(); ++i) out[quotient_coords_[i]] = q[i];
    return out;
  }

 private:
  Degree degree_;
  std::vector<FreeBasisElement> free_basis_;
  std::map<FreeBasisElement, std::size_t> index_;
  Subspace relations_;
  std::vector<std::size_t> quotient_coords_;
};

class HilbertTable {
 public:
  HilbertTable() = default;
  explicit HilbertTable(DegreeWindow window) : window_(std::move(window)) {
    for (const auto& d : window_) values_.emplace(d, 0);
  }

  const DegreeWindow& window() const { return window_; }
  std::size_t at(const Degree& d) const {
    auto it = values_.find(d);
    if (it == values_.end()) throw std::out_of_range("HilbertTable: degree " + to_string(d) + " outside window");
    return it->second;
  }
  void set(const Degree& d, std::size_t v) {
    auto it = values_.find(d);
    if (it == values_.end()) throw std::out_of_range("HilbertTable: degree " + to_string(d) + " outside window");
    it->second = v;
  }
  const std::map<Degree, std::size_t>& values() const { return values_; }

  bool operator==(const HilbertTable&) const = default;

 private:
  DegreeWindow window_;
  std::map<Degree, std::size_t> values_;
};

class GradedModule {
 public:
  GradedModule(RingPtr ring, std::vector<Degree> generator_degrees, std::vector<Relation> relations)
      : ring_(std::move(ring)),
        gens_(std::move(generator_degrees)),
        relations_(std::move(relations)),
        cache_(std::make_shared<Cache>()) {
    if (!ring_) throw std::invalid_argument("GradedModule: null ring");
    for (const auto& d : gens_) ring_->group().require(d);
    for (std::size_t k = 0; k < relations_.size(); ++k) {
      const auto& rel = relations_[k];
      ring_->group().require(rel.degree);
      if (rel.entries.size() != gens_.size())
        throw std::invalid_argument("GradedModule: relation " + std::to_string(k) + " needs one entry per generator");
      for (std::size_t j = 0; j < gens_.size(); ++j) {
        const auto& p = rel.entries[j];
        if (p.is_zero()) continue;
        const auto want = ring_->group().subtract(rel.degree, gens_[j]);
        const auto got = ring_->degree(p);
        if (!got || *got != want)
          throw std::invalid_argument("GradedModule: relation " + std::to_string(k) + " entry " + std::to_string(j) + " (" +
                                      to_string(p, ring_->names()) + ") is not homogeneous of degree " + to_string(want));
      }
    }
  }

  /// The free module of rank one, R itself.
  static GradedModule ring_module(RingPtr ring) {
    auto zero = ring->group().zero();
    return GradedModule(std::move(ring), {zero}, {});
  }

  /// Free module with generators in the given degrees.
  static GradedModule free_module(RingPtr ring, std::vector<Degree> degrees) {
    return GradedModule(std::move(ring), std::move(degrees), {});
  }

  /// R/a with one generator in degree 0 and one relation per minimal generator.
  static GradedModule quotient(RingPtr ring, const MonomialIdeal& a) {
    std::vector<Relation> rels;
    for (const auto& m : a.generators()) rels.push_back(Relation{ring->degree(m), {Polynomial(m)}});
    auto zero = ring->group().zero();
    return GradedModule(std::move(ring), {zero}, std::move(rels));
  }

  const RingPtr& ring() const { return ring_; }
  const DegreeGroup& group() const { return ring_->group(); }
  const std::vector<Degree>& generator_degrees() const { return gens_; }
  const std::vector<Relation>& relations() const { return relations_; }

  /// M(s): every degree moves by -s.
  GradedModule shifted(const Degree& s) const {
    std::vector<Degree> g;
    for (const auto& d : gens_) g.push_back(group().subtract(d, s));
    std::vector<Relation> r;
    for (const auto& rel : relations_) r.push_back(Relation{group().subtract(rel.degree, s), rel.entries});
    return GradedModule(ring_, std::move(g), std::move(r));
  }

  /// Same generators and relations over another ring (used by coarsening).
  GradedModule with_ring(RingPtr ring, std::vector<Degree> generator_degrees, std::vector<Relation> relations) const {
    return GradedModule(std::move(ring), std::move(generator_degrees), std::move(relations));
  }

  const Component& component(const Degree& g) const {
    {
      std::lock_guard lock(cache_->mutex);
      auto it = cache_->components.find(g);
      if (it != cache_->components.end()) return *it->second;
    }
    auto comp = std::make_shared<Component>(build_component(g));
    std::lock_guard lock(cache_->mutex);
    auto [it, inserted] = cache_->components.emplace(g, std::move(comp));
    return *it->second;
  }

  std::size_t dim(const Degree& g) const { return component(g).dim(); }

  HilbertTable hilbert(const DegreeWindow& w) const {
    HilbertTable t(w);
    for (const auto& d : w) t.set(d, dim(d));
    return t;
  }

  /// Free vector of f * v, where v is a free vector in degree `from`.
  Vector multiply_free(const Component& from, const Component& to, const Vector& v, const Polynomial& f) const {
    Vector out(to.free_dim());
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (sgn(v[i]) == 0) continue;
      const auto& e = from.free_basis()[i];
      for (const auto& [m, c] : f.terms()) {
        auto idx = to.find(FreeBasisElement{e.generator, e.monomial * m});
        if (!idx) throw std::logic_error("multiply_free: product left the target component");
        out[*idx] += c * v[i];
      }
    }
    return out;
  }

  /// Matrix of multiplication by a homogeneous f from M_g to M_{g + deg f}.
  Matrix multiplication_map(const Polynomial& f, const Degree& g) const {
    const auto& src = component(g);
    if (f.is_zero()) return Matrix(0, src.dim());
    auto df = ring_->degree(f);
    if (!df) throw std::invalid_argument("multiplication_map: element is not homogeneous");
    const auto& dst = component(group().add(g, *df));
    Matrix out(dst.dim(), src.dim());
    for (std::size_t j = 0; j < src.dim(); ++j) {
      Vector e(src.dim());
      e[j] = 1;
      auto img = dst.reduce(multiply_free(src, dst, src.lift(e), f));
      for (std::size_t i = 0; i < dst.dim(); ++i) out(i, j) = img[i];
    }
    return out;
  }

  Matrix multiplication_map(const Monomial& m, const Degree& g) const { return multiplication_map(Polynomial(m), g); }

 private:
  struct Cache {
    std::mutex mutex;
    std::map<Degree, std::shared_ptr<const Component>> components;
  };

  Component build_component(const Degree& g) const {
    std::vector<FreeBasisElement> basis;
    for (std::size_t j = 0; j < gens_.size(); ++j)
      for (const auto& m : ring_->monomials_of_degree(group().subtract(g, gens_[j])))
        basis.push_back(FreeBasisElement{j, m});
    std::map<FreeBasisElement, std::size_t> index;
    for (std::size_t i = 0; i < basis.size(); ++i) index.emplace(basis[i], i);

    std::vector<Vector> rel_vectors;
    for (const auto& rel : relations_) {
      for (const auto& mult : ring_->monomials_of_degree(group().subtract(g, rel.degree))) {
        Vector v(basis.size());
        for (std::size_t j = 0; j < gens_.size(); ++j)
          for (const auto& [m, c] : rel.entries[j].terms()) v[index.at(FreeBasisElement{j, m * mult})] += c;
        if (!gcoh::is_zero(v)) rel_vectors.push_back(std::move(v));
      }
    }
    return Component(g, std::move(basis), std::move(rel_vectors));
  }

  RingPtr ring_;
  std::vector<Degree> gens_;
  std::vector<Relation> relations_;
  std::shared_ptr<Cache> cache_;
};

}  // namespace gcoh
