#pragma once

// Exact dense linear algebra over the rationals.
//
// Matrices act on column vectors: a Matrix with r rows and c columns is a map
// Q^c -> Q^r. Elimination scans columns left to right and takes the first row
// with a nonzero entry as pivot; there is no reordering heuristic, so every
// result is deterministic.

#include <gmpxx.h>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gcoh {

using Rational = mpq_class;
using Vector = std::vector<Rational>;

inline Rational to_rational(long long v) { return Rational(static_cast<long>(v)); }

inline bool is_zero(const Vector& v) {
  for (const auto& x : v)
    if (sgn(x) != 0) return false;
  return true;
}

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  /// Matrix whose columns are the given vectors (all of length `rows`).
  static Matrix from_columns(std::size_t rows, const std::vector<Vector>& columns) {
    Matrix m(rows, columns.size());
    for (std::size_t j = 0; j < columns.size(); ++j) {
      if (columns[j].size() != rows) throw std::invalid_argument("from_columns: column length mismatch");
      for (std::size_t i = 0; i < rows; ++i) m(i, j) = columns[j][i];
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  Vector column(std::size_t c) const {
    Vector v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
    return v;
  }

  std::vector<Vector> columns() const {
    std::vector<Vector> out;
    out.reserve(cols_);
    for (std::size_t c = 0; c < cols_; ++c) out.push_back(column(c));
    return out;
  }

  Vector apply(const Vector& x) const {
    if (x.size() != cols_) throw std::invalid_argument("Matrix::apply: dimension mismatch");
    Vector y(rows_);
    for (std::size_t c = 0; c < cols_; ++c) {
      if (sgn(x[c]) == 0) continue;
      for (std::size_t r = 0; r < rows_; ++r) {
        const auto& a = (*this)(r, c);
        if (sgn(a) != 0) y[r] += a * x[c];
      }
    }
    return y;
  }

  Matrix operator*(const Matrix& other) const {
    if (cols_ != other.rows_) throw std::invalid_argument("Matrix product: dimension mismatch");
    Matrix out(rows_, other.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        const auto& a = (*this)(i, k);
        if (sgn(a) == 0) continue;
        for (std::size_t j = 0; j < other.cols_; ++j) {
          const auto& b = other(k, j);
          if (sgn(b) != 0) out(i, j) += a * b;
        }
      }
    return out;
  }

  bool is_zero() const {
    for (const auto& x : data_)
      if (sgn(x) != 0) return false;
    return true;
  }

  bool operator==(const Matrix& other) const {
    return rows_ == other.rows_ && cols_ == other.cols_ && data_ == other.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

/// Reduced row echelon form; only the nonzero rows are kept.
struct EchelonForm {
  std::vector<Vector> rows;
  std::vector<std::size_t> pivots;  // pivot column of each row
  std::size_t width = 0;

  std::size_t rank() const { return rows.size(); }
};

/// Row-reduces the given rows (each of length `width`).
inline EchelonForm row_reduce(std::vector<Vector> rows, std::size_t width) {
  EchelonForm out;
  out.width = width;
  std::size_t next = 0;
  for (std::size_t col = 0; col < width && next < rows.size(); ++col) {
    std::size_t piv = next;
    while (piv < rows.size() && sgn(rows[piv][col]) == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[next], rows[piv]);
    Vector& p = rows[next];
    if (p[col] != 1) {
      const Rational inv = 1 / p[col];
      for (std::size_t c = col; c < width; ++c)
        if (sgn(p[c]) != 0) p[c] *= inv;
    }
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == next || sgn(rows[r][col]) == 0) continue;
      const Rational factor = rows[r][col];
      for (std::size_t c = col; c < width; ++c)
        if (sgn(p[c]) != 0) rows[r][c] -= factor * p[c];
    }
    out.pivots.push_back(col);
    ++next;
  }
  rows.resize(next);
  out.rows = std::move(rows);
  return out;
}

inline EchelonForm row_reduce(const Matrix& m) {
  std::vector<Vector> rows(m.rows(), Vector(m.cols()));
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) rows[r][c] = m(r, c);
  return row_reduce(std::move(rows), m.cols());
}

inline std::size_t rank(const Matrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  // Reduce whichever orientation has fewer rows.
  if (m.rows() <= m.cols()) return row_reduce(m).rank();
  return row_reduce(m.columns(), m.rows()).rank();
}

/// Basis of the null space {x : m x = 0}.
inline std::vector<Vector> kernel(const Matrix& m) {
  const std::size_t n = m.cols();
  const auto ef = row_reduce(m);
  std::vector<bool> is_pivot(n, false);
  for (auto p : ef.pivots) is_pivot[p] = true;
  std::vector<Vector> basis;
  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    Vector v(n);
    v[free] = 1;
    for (std::size_t r = 0; r < ef.rows.size(); ++r) v[ef.pivots[r]] = -ef.rows[r][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

/// A linear subspace of Q^n held in reduced row echelon form.
class Subspace {
 public:
  Subspace() = default;
  explicit Subspace(std::size_t ambient) : form_{{}, {}, ambient} {}
  Subspace(std::vector<Vector> spanning, std::size_t ambient) : form_(row_reduce(std::move(spanning), ambient)) {}

  static Subspace column_space(const Matrix& m) { return Subspace(m.columns(), m.rows()); }
  static Subspace whole(std::size_t n) {
    std::vector<Vector> basis;
    for (std::size_t i = 0; i < n; ++i) {
      Vector v(n);
      v[i] = 1;
      basis.push_back(std::move(v));
    }
    return Subspace(std::move(basis), n);
  }

  std::size_t ambient() const { return form_.width; }
  std::size_t dim() const { return form_.rank(); }
  const std::vector<Vector>& basis() const { return form_.rows; }
  const std::vector<std::size_t>& pivots() const { return form_.pivots; }

  /// Normal form of v modulo this subspace: zero in every pivot coordinate.
  Vector reduce(Vector v) const {
    if (v.size() != ambient()) throw std::invalid_argument("Subspace::reduce: dimension mismatch");
    for (std::size_t r = 0; r < form_.rows.size(); ++r) {
      const auto col = form_.pivots[r];
      if (sgn(v[col]) == 0) continue;
      const Rational factor = v[col];
      const auto& row = form_.rows[r];
      for (std::size_t c = col; c < v.size(); ++c)
        if (sgn(row[c]) != 0) v[c] -= factor * row[c];
    }
    return v;
  }

  bool contains(const Vector& v) const { return gcoh::is_zero(reduce(v)); }

  bool contains(const Subspace& other) const {
    for (const auto& v : other.basis())
      if (!contains(v)) return false;
    return true;
  }

  Subspace plus(const Subspace& other) const {
    auto rows = form_.rows;
    rows.insert(rows.end(), other.basis().begin(), other.basis().end());
    return Subspace(std::move(rows), ambient());
  }

  /// RREF bases are canonical, so equality is row-wise.
  bool operator==(const Subspace& other) const {
    return ambient() == other.ambient() && form_.pivots == other.form_.pivots && form_.rows == other.form_.rows;
  }

 private:
  EchelonForm form_;
};

inline std::string to_string(const Rational& q) { return q.get_str(); }

}  // namespace gcoh
