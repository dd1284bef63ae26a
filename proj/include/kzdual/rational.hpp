#pragma once

// Exact rational scalars and dense rational matrices.

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "kzdual/errors.hpp"

namespace kzdual {

/// Arbitrary-precision rational, always kept in canonical form.
using Rat = mpq_class;

inline Rat make_rat(long num, long den = 1) {
  Rat r(num, den);
  r.canonicalize();
  return r;
}

/// "p/q", with "/q" omitted when q == 1.
inline std::string to_string(const Rat& r) { return r.get_str(); }

inline Rat parse_rat(const std::string& s) {
  Rat r;
  if (s.empty() || r.set_str(s, 10) != 0 || r.get_den() == 0) {
    throw ParseError("not a rational: '" + s + "'");
  }
  r.canonicalize();
  return r;
}

inline bool is_integer(const Rat& r) { return r.get_den() == 1; }

class QMatrix {
 public:
  QMatrix() = default;
  QMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), entries_(rows * cols) {}
  QMatrix(std::size_t rows, std::size_t cols, std::vector<Rat> entries)
      : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (entries_.size() != rows_ * cols_) {
      throw DimensionMismatch("entry count does not match shape");
    }
  }
  QMatrix(std::initializer_list<std::initializer_list<Rat>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    entries_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
      if (row.size() != cols_) throw DimensionMismatch("ragged initializer");
      entries_.insert(entries_.end(), row.begin(), row.end());
    }
  }

  static QMatrix identity(std::size_t n) {
    QMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }
  static QMatrix scalar(std::size_t n, const Rat& c) {
    QMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = c;
    return m;
  }
  static QMatrix diagonal(std::span<const Rat> diag) {
    QMatrix m(diag.size(), diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }
  const std::vector<Rat>& entries() const { return entries_; }

  Rat& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const Rat& operator()(std::size_t r, std::size_t c) const {
    return entries_[r * cols_ + c];
  }

  bool is_zero() const {
    for (const auto& e : entries_)
      if (sgn(e) != 0) return false;
    return true;
  }

  QMatrix& operator+=(const QMatrix& o) {
    check_same_shape(o);
    for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += o.entries_[i];
    return *this;
  }
  QMatrix& operator-=(const QMatrix& o) {
    check_same_shape(o);
    for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= o.entries_[i];
    return *this;
  }
  QMatrix& operator*=(const Rat& c) {
    for (auto& e : entries_) e *= c;
    return *this;
  }

  /// this += c * o
  void add_scaled(const QMatrix& o, const Rat& c) {
    check_same_shape(o);
    if (sgn(c) == 0) return;
    for (std::size_t i = 0; i < entries_.size(); ++i)
      if (sgn(o.entries_[i]) != 0) entries_[i] += c * o.entries_[i];
  }

  QMatrix transpose() const {
    QMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  friend bool operator==(const QMatrix& a, const QMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
  }

 private:
  void check_same_shape(const QMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
      throw DimensionMismatch("matrix shapes differ");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rat> entries_;
};

inline QMatrix operator+(QMatrix a, const QMatrix& b) { return a += b; }
inline QMatrix operator-(QMatrix a, const QMatrix& b) { return a -= b; }
inline QMatrix operator*(QMatrix a, const Rat& c) { return a *= c; }
inline QMatrix operator*(const Rat& c, QMatrix a) { return a *= c; }
inline QMatrix operator-(QMatrix a) { return a *= Rat(-1); }

// Generator matrices are very sparse; skipping zero factors on both
// sides keeps the exact products cheap.
inline QMatrix operator*(const QMatrix& a, const QMatrix& b) {
  if (a.cols() != b.rows()) throw DimensionMismatch("inner dimensions differ");
  QMatrix out(a.rows(), b.cols());
  Rat tmp;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Rat& aik = a(i, k);
      if (sgn(aik) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) {
        const Rat& bkj = b(k, j);
        if (sgn(bkj) == 0) continue;
        tmp = aik * bkj;
        out(i, j) += tmp;
      }
    }
  }
  return out;
}

inline QMatrix commutator(const QMatrix& a, const QMatrix& b) { return a * b - b * a; }

/// Reduced row echelon form in place; returns the pivot columns.
inline std::vector<std::size_t> row_reduce(QMatrix& m) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t piv = row;
    while (piv < m.rows() && sgn(m(piv, col)) == 0) ++piv;
    if (piv == m.rows()) continue;
    if (piv != row)
      for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(piv, c), m(row, c));
    const Rat inv = 1 / m(row, col);
    for (std::size_t c = col; c < m.cols(); ++c) m(row, c) *= inv;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == row || sgn(m(r, col)) == 0) continue;
      const Rat f = m(r, col);
      for (std::size_t c = col; c < m.cols(); ++c)
        if (sgn(m(row, c)) != 0) m(r, c) -= f * m(row, c);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

inline std::size_t rank(QMatrix m) { return row_reduce(m).size(); }

inline QMatrix mat_inverse(const QMatrix& m) {
  if (!m.square()) throw DimensionMismatch("inverse of a non-square matrix");
  const std::size_t n = m.rows();
  QMatrix aug(n, 2 * n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) aug(r, c) = m(r, c);
    aug(r, n + r) = 1;
  }
  const auto pivots = row_reduce(aug);
  if (pivots.size() < n || (n > 0 && pivots[n - 1] != n - 1))
    throw SingularMatrix("matrix has rank < " + std::to_string(n));
  QMatrix inv(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) inv(r, c) = aug(r, n + c);
  return inv;
}

/// Columns of the returned matrix span the right kernel of m.
inline QMatrix nullspace(const QMatrix& m) {
  QMatrix red = m;
  const auto pivots = row_reduce(red);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<std::size_t> free_cols;
  for (std::size_t c = 0; c < m.cols(); ++c)
    if (!is_pivot[c]) free_cols.push_back(c);
  QMatrix basis(m.cols(), free_cols.size());
  for (std::size_t f = 0; f < free_cols.size(); ++f) {
    basis(free_cols[f], f) = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r)
      basis(pivots[r], f) = -red(r, free_cols[f]);
  }
  return basis;
}

/// Vertically stacks matrices sharing a column count.
inline QMatrix vstack(std::span<const QMatrix> parts, std::size_t cols) {
  std::size_t rows = 0;
  for (const auto& p : parts) {
    if (p.cols() != cols) throw DimensionMismatch("vstack column mismatch");
    rows += p.rows();
  }
  QMatrix out(rows, cols);
  std::size_t r0 = 0;
  for (const auto& p : parts) {
    for (std::size_t r = 0; r < p.rows(); ++r)
      for (std::size_t c = 0; c < cols; ++c) out(r0 + r, c) = p(r, c);
    r0 += p.rows();
  }
  return out;
}

/// Spectral projectors P_c = prod_{c' != c} (m - c') / (c - c') of a
/// diagonalizable matrix whose spectrum is contained in `eigenvalues`.
/// Values absent from the spectrum get a zero projector.
inline std::vector<QMatrix> lagrange_projectors(const QMatrix& m,
                                                std::span<const Rat> eigenvalues) {
  if (!m.square()) throw DimensionMismatch("projectors of a non-square matrix");
  const std::size_t n = m.rows();
  for (std::size_t a = 0; a < eigenvalues.size(); ++a)
    for (std::size_t b = a + 1; b < eigenvalues.size(); ++b)
      if (eigenvalues[a] == eigenvalues[b])
        throw SpectrumMismatch("eigenvalue list has repeats");

  std::vector<QMatrix> shifted;
  shifted.reserve(eigenvalues.size());
  for (const auto& c : eigenvalues) shifted.push_back(m - QMatrix::scalar(n, c));

  QMatrix annihilator = QMatrix::identity(n);
  for (const auto& s : shifted) annihilator = annihilator * s;
  if (!annihilator.is_zero())
    throw SpectrumMismatch("matrix is not annihilated by the given spectrum");

  std::vector<QMatrix> out;
  out.reserve(eigenvalues.size());
  for (std::size_t a = 0; a < eigenvalues.size(); ++a) {
    QMatrix p = QMatrix::identity(n);
    for (std::size_t b = 0; b < eigenvalues.size(); ++b) {
      if (a == b) continue;
      p = p * shifted[b];
      p *= Rat(1) / (eigenvalues[a] - eigenvalues[b]);
    }
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace kzdual
