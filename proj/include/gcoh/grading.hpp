#pragma once

// Finitely generated abelian degree groups Z^r + Z/m_1 + ... + Z/m_t, their
// elements, epimorphisms between them, fibers and finite degree windows.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gcoh {

using Int = long long;

/// An element of a degree group. Torsion coordinates are always stored reduced.
struct Degree {
  std::vector<Int> free;
  std::vector<Int> torsion;

  auto operator<=>(const Degree&) const = default;
  bool operator==(const Degree&) const = default;
};

/// Renders `(f1,f2)` for torsion-free groups and `(f1,f2;t1)` otherwise.
inline std::string to_string(const Degree& d) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < d.free.size(); ++i) os << (i ? "," : "") << d.free[i];
  if (!d.torsion.empty()) {
    os << ';';
    for (std::size_t i = 0; i < d.torsion.size(); ++i) os << (i ? "," : "") << d.torsion[i];
  }
  os << ')';
  return os.str();
}

inline Int floor_mod(Int a, Int m) {
  Int r = a % m;
  return r < 0 ? r + m : r;
}

class DegreeGroup {
 public:
  DegreeGroup() = default;
  DegreeGroup(std::size_t free_rank, std::vector<Int> torsion_orders)
      : free_rank_(free_rank), torsion_(std::move(torsion_orders)) {
    for (auto m : torsion_)
      if (m < 2) throw std::invalid_argument("DegreeGroup: torsion orders must be >= 2");
  }

  static DegreeGroup free_group(std::size_t rank) { return DegreeGroup(rank, {}); }

  std::size_t free_rank() const { return free_rank_; }
  const std::vector<Int>& torsion_orders() const { return torsion_; }
  std::size_t coordinate_count() const { return free_rank_ + torsion_.size(); }

  Int torsion_cardinality() const {
    Int n = 1;
    for (auto m : torsion_) n *= m;
    return n;
  }

  Degree make(std::vector<Int> free, std::vector<Int> torsion = {}) const {
    if (torsion.empty()) torsion.assign(torsion_.size(), 0);
    if (free.size() != free_rank_ || torsion.size() != torsion_.size())
      throw std::invalid_argument("DegreeGroup::make: coordinate count mismatch");
    for (std::size_t i = 0; i < torsion.size(); ++i) torsion[i] = floor_mod(torsion[i], torsion_[i]);
    return Degree{std::move(free), std::move(torsion)};
  }

  /// Builds a degree from a flat coordinate list (free coordinates first).
  Degree from_coordinates(const std::vector<Int>& coords) const {
    if (coords.size() != coordinate_count())
      throw std::invalid_argument("DegreeGroup: expected " + std::to_string(coordinate_count()) + " coordinates");
    return make({coords.begin(), coords.begin() + static_cast<std::ptrdiff_t>(free_rank_)},
                {coords.begin() + static_cast<std::ptrdiff_t>(free_rank_), coords.end()});
  }

  Degree zero() const { return make(std::vector<Int>(free_rank_, 0)); }

  bool contains(const Degree& d) const {
    if (d.free.size() != free_rank_ || d.torsion.size() != torsion_.size()) return false;
    for (std::size_t i = 0; i < torsion_.size(); ++i)
      if (d.torsion[i] < 0 || d.torsion[i] >= torsion_[i]) return false;
    return true;
  }

  void require(const Degree& d) const {
    if (!contains(d)) throw std::invalid_argument("degree " + to_string(d) + " is not an element of " + describe());
  }

  Degree add(const Degree& a, const Degree& b) const {
    require(a);
    require(b);
    Degree out = a;
    for (std::size_t i = 0; i < free_rank_; ++i) out.free[i] += b.free[i];
    for (std::size_t i = 0; i < torsion_.size(); ++i) out.torsion[i] = (out.torsion[i] + b.torsion[i]) % torsion_[i];
    return out;
  }

  Degree negate(const Degree& a) const {
    require(a);
    Degree out = a;
    for (auto& x : out.free) x = -x;
    for (std::size_t i = 0; i < torsion_.size(); ++i) out.torsion[i] = floor_mod(-out.torsion[i], torsion_[i]);
    return out;
  }

  Degree subtract(const Degree& a, const Degree& b) const { return add(a, negate(b)); }

  Degree scale(const Degree& a, Int k) const {
    require(a);
    Degree out = a;
    for (auto& x : out.free) x *= k;
    for (std::size_t i = 0; i < torsion_.size(); ++i) out.torsion[i] = floor_mod(out.torsion[i] * k, torsion_[i]);
    return out;
  }

  std::string describe() const {
    std::ostringstream os;
    if (free_rank_ > 0) os << "Z^" << free_rank_;
    for (auto m : torsion_) os << (os.tellp() > 0 ? "+" : "") << "Z/" << m;
    if (os.tellp() == 0) os << "0";
    return os.str();
  }

  bool operator==(const DegreeGroup&) const = default;

 private:
  std::size_t free_rank_ = 0;
  std::vector<Int> torsion_;
};

/// A finite, explicitly enumerated set of degrees.
class DegreeWindow {
 public:
  DegreeWindow() = default;
  explicit DegreeWindow(std::vector<Degree> degrees) : degrees_(std::move(degrees)) {
    std::sort(degrees_.begin(), degrees_.end());
    degrees_.erase(std::unique(degrees_.begin(), degrees_.end()), degrees_.end());
  }

  /// The box [lo, hi] in the free coordinates crossed with the whole torsion part.
  static DegreeWindow box(const DegreeGroup& group, const std::vector<Int>& lo, const std::vector<Int>& hi) {
    if (lo.size() != group.free_rank() || hi.size() != group.free_rank())
      throw std::invalid_argument("DegreeWindow::box: bounds must have one entry per free coordinate");
    std::vector<Degree> out;
    std::vector<Int> free(lo);
    std::vector<Int> tors(group.torsion_orders().size(), 0);
    for (std::size_t i = 0; i < lo.size(); ++i)
      if (lo[i] > hi[i]) return DegreeWindow{};
    while (true) {
      // Inner loop over torsion, outer odometer over the free box.
      std::fill(tors.begin(), tors.end(), 0);
      while (true) {
        out.push_back(Degree{free, tors});
        std::size_t k = 0;
        while (k < tors.size() && ++tors[k] == group.torsion_orders()[k]) tors[k++] = 0;
        if (k == tors.size()) break;
      }
      std::size_t k = 0;
      while (k < free.size() && ++free[k] > hi[k]) {
        free[k] = lo[k];
        ++k;
      }
      if (k == free.size()) break;
    }
    return DegreeWindow(std::move(out));
  }

  static DegreeWindow box(const DegreeGroup& group, Int lo, Int hi) {
    return box(group, std::vector<Int>(group.free_rank(), lo), std::vector<Int>(group.free_rank(), hi));
  }

  const std::vector<Degree>& degrees() const { return degrees_; }
  std::size_t size() const { return degrees_.size(); }
  bool empty() const { return degrees_.empty(); }
  bool contains(const Degree& d) const { return std::binary_search(degrees_.begin(), degrees_.end(), d); }
  auto begin() const { return degrees_.begin(); }
  auto end() const { return degrees_.end(); }

  bool operator==(const DegreeWindow&) const = default;

 private:
  std::vector<Degree> degrees_;
};

/// A homomorphism G -> H given by the images of the generators of G.
/// Column j of the matrix holds the image of the j-th generator of G (free
/// generators first) in the coordinates of H (free coordinates first).
class GroupEpimorphism {
 public:
  GroupEpimorphism() = default;
  GroupEpimorphism(DegreeGroup source, DegreeGroup target, std::vector<std::vector<Int>> matrix)
      : source_(std::move(source)), target_(std::move(target)), matrix_(std::move(matrix)) {
    if (matrix_.size() != target_.coordinate_count())
      throw std::invalid_argument("GroupEpimorphism: matrix needs one row per target coordinate");
    for (const auto& row : matrix_)
      if (row.size() != source_.coordinate_count())
        throw std::invalid_argument("GroupEpimorphism: matrix needs one column per source generator");
    // A torsion generator of order m must map to an element killed by m.
    for (std::size_t j = 0; j < source_.torsion_orders().size(); ++j) {
      const Int m = source_.torsion_orders()[j];
      const std::size_t col = source_.free_rank() + j;
      for (std::size_t i = 0; i < target_.coordinate_count(); ++i) {
        const Int v = matrix_[i][col] * m;
        const bool killed = i < target_.free_rank() ? v == 0 : floor_mod(v, target_.torsion_orders()[i - target_.free_rank()]) == 0;
        if (!killed)
          throw std::invalid_argument("GroupEpimorphism: image of torsion generator " + std::to_string(j) +
                                      " does not have order dividing " + std::to_string(m));
      }
    }
  }

  static GroupEpimorphism identity(const DegreeGroup& g) {
    const auto n = g.coordinate_count();
    std::vector<std::vector<Int>> m(n, std::vector<Int>(n, 0));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
    return GroupEpimorphism(g, g, std::move(m));
  }

  const DegreeGroup& source() const { return source_; }
  const DegreeGroup& target() const { return target_; }
  const std::vector<std::vector<Int>>& matrix() const { return matrix_; }

  Degree apply(const Degree& g) const {
    if (!source_.contains(g))
      throw std::invalid_argument("GroupEpimorphism::apply: " + to_string(g) + " is not in " + source_.describe());
    std::vector<Int> coords(target_.coordinate_count(), 0);
    std::vector<Int> src(g.free);
    src.insert(src.end(), g.torsion.begin(), g.torsion.end());
    for (std::size_t i = 0; i < coords.size(); ++i)
      for (std::size_t j = 0; j < src.size(); ++j) coords[i] += matrix_[i][j] * src[j];
    return target_.from_coordinates(coords);
  }

  /// True iff the generator images together with the torsion relations of H
  /// span the coordinate lattice Z^(r+t); decided by integer column echelon form.
  bool verify_surjective() const {
    const std::size_t n = target_.coordinate_count();
    std::vector<std::vector<Int>> cols;
    for (std::size_t j = 0; j < source_.coordinate_count(); ++j) {
      std::vector<Int> c(n);
      for (std::size_t i = 0; i < n; ++i) c[i] = matrix_[i][j];
      cols.push_back(std::move(c));
    }
    for (std::size_t k = 0; k < target_.torsion_orders().size(); ++k) {
      std::vector<Int> c(n, 0);
      c[target_.free_rank() + k] = target_.torsion_orders()[k];
      cols.push_back(std::move(c));
    }
    std::size_t used = 0;
    for (std::size_t row = 0; row < n; ++row) {
      // Euclid on the unused columns until at most one has a nonzero entry in `row`.
      while (true) {
        std::size_t best = cols.size();
        for (std::size_t j = used; j < cols.size(); ++j)
          if (cols[j][row] != 0 && (best == cols.size() || std::abs(cols[j][row]) < std::abs(cols[best][row]))) best = j;
        if (best == cols.size()) return false;  // row is not reached
        std::swap(cols[used], cols[best]);
        bool reduced = true;
        for (std::size_t j = used + 1; j < cols.size(); ++j) {
          if (cols[j][row] == 0) continue;
          const Int q = cols[j][row] / cols[used][row];
          for (std::size_t i = 0; i < n; ++i) cols[j][i] -= q * cols[used][i];
          if (cols[j][row] != 0) reduced = false;
        }
        if (reduced) break;
      }
      if (std::abs(cols[used][row]) != 1) return false;
      ++used;
    }
    return true;
  }

  bool kernel_is_finite() const {
    if (!verify_surjective()) throw std::invalid_argument("kernel_is_finite: map is not surjective");
    return source_.free_rank() == target_.free_rank();
  }

  /// |ker| = |torsion(G)| / |torsion(H)| for an epimorphism with finite kernel.
  Int kernel_order() const {
    if (!kernel_is_finite()) throw std::invalid_argument("kernel_order: kernel is infinite");
    return source_.torsion_cardinality() / target_.torsion_cardinality();
  }

  bool is_identity() const { return source_ == target_ && *this == identity(source_); }

  bool operator==(const GroupEpimorphism&) const = default;

 private:
  DegreeGroup source_;
  DegreeGroup target_;
  std::vector<std::vector<Int>> matrix_;
};

/// { g in window : psi(g) = h }.
inline std::vector<Degree> fiber(const GroupEpimorphism& psi, const Degree& h, const DegreeWindow& window) {
  psi.target().require(h);
  std::vector<Degree> out;
  for (const auto& g : window)
    if (psi.apply(g) == h) out.push_back(g);
  return out;
}

/// Image of a window under psi, as a window of the target.
inline DegreeWindow image(const GroupEpimorphism& psi, const DegreeWindow& window) {
  std::vector<Degree> out;
  for (const auto& g : window) out.push_back(psi.apply(g));
  return DegreeWindow(std::move(out));
}

}  // namespace gcoh
