#pragma once

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "toricmdp/numeric.hpp"

namespace toricmdp {

/// Fixed-length vector of arbitrary-precision integers.
class IntVector {
 public:
  IntVector() = default;
  explicit IntVector(std::size_t n) : e_(n, Int(0)) {}
  IntVector(std::initializer_list<long> vals) {
    e_.reserve(vals.size());
    for (long v : vals) e_.emplace_back(v);
  }
  explicit IntVector(std::vector<Int> vals) : e_(std::move(vals)) {}

  std::size_t size() const { return e_.size(); }
  Int& operator[](std::size_t i) { return e_[i]; }
  const Int& operator[](std::size_t i) const { return e_[i]; }
  const std::vector<Int>& entries() const { return e_; }

  bool is_zero() const {
    for (const Int& v : e_)
      if (v != 0) return false;
    return true;
  }

  Int content() const {
    Int g = 0;
    for (const Int& v : e_) g = int_gcd(g, v);
    return g;
  }

  /// gcd of entries is 1
  bool is_primitive() const { return content() == 1; }

  /// Divide out the content (no-op on the zero vector).
  IntVector primitive_part() const {
    Int g = content();
    if (g <= 1) return *this;
    IntVector r(size());
    for (std::size_t i = 0; i < size(); ++i) r[i] = e_[i] / g;
    return r;
  }

  friend bool operator==(const IntVector& a, const IntVector& b) { return a.e_ == b.e_; }
  friend bool operator!=(const IntVector& a, const IntVector& b) { return a.e_ != b.e_; }
  friend bool operator<(const IntVector& a, const IntVector& b) { return a.e_ < b.e_; }

  friend IntVector operator+(const IntVector& a, const IntVector& b) {
    IntVector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
  }
  friend IntVector operator-(const IntVector& a, const IntVector& b) {
    IntVector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
  }
  friend IntVector operator-(const IntVector& a) {
    IntVector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
    return r;
  }
  friend IntVector operator*(const Int& c, const IntVector& a) {
    IntVector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = c * a[i];
    return r;
  }

  friend Int dot(const IntVector& a, const IntVector& b) {
    Int s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
  }

 private:
  std::vector<Int> e_;
};

/// Fixed-length vector of exact rationals.
class RatVector {
 public:
  RatVector() = default;
  explicit RatVector(std::size_t n) : e_(n, Rat(0)) {}
  RatVector(std::initializer_list<Rat> vals) : e_(vals) {}
  explicit RatVector(std::vector<Rat> vals) : e_(std::move(vals)) {}
  explicit RatVector(const IntVector& v) {
    e_.reserve(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) e_.emplace_back(v[i]);
  }

  std::size_t size() const { return e_.size(); }
  Rat& operator[](std::size_t i) { return e_[i]; }
  const Rat& operator[](std::size_t i) const { return e_[i]; }

  friend bool operator==(const RatVector& a, const RatVector& b) { return a.e_ == b.e_; }
  friend bool operator!=(const RatVector& a, const RatVector& b) { return a.e_ != b.e_; }

  friend Rat dot(const RatVector& a, const RatVector& b) {
    Rat s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
  }
  friend Rat dot(const RatVector& a, const IntVector& b) {
    Rat s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * Rat(b[i]);
    return s;
  }

 private:
  std::vector<Rat> e_;
};

/// Dense row-major matrix of arbitrary-precision integers.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), e_(rows * cols, Int(0)) {}

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }
  static IntMatrix from_rows(const std::vector<IntVector>& rows) {
    if (rows.empty()) return IntMatrix(0, 0);
    IntMatrix m(rows.size(), rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
    return m;
  }
  static IntMatrix from_columns(const std::vector<IntVector>& cols) {
    if (cols.empty()) return IntMatrix(0, 0);
    IntMatrix m(cols[0].size(), cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j)
      for (std::size_t i = 0; i < cols[j].size(); ++i) m(i, j) = cols[j][i];
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Int& operator()(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }
  const Int& operator()(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }

  IntVector row(std::size_t i) const {
    IntVector r(cols_);
    for (std::size_t j = 0; j < cols_; ++j) r[j] = (*this)(i, j);
    return r;
  }
  IntVector column(std::size_t j) const {
    IntVector c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }

  IntMatrix transposed() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  void swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t k = 0; k < cols_; ++k) std::swap((*this)(i, k), (*this)(j, k));
  }
  void negate_row(std::size_t i) {
    for (std::size_t k = 0; k < cols_; ++k) (*this)(i, k) = -(*this)(i, k);
  }
  void add_multiple_of_row(std::size_t dst, std::size_t src, const Int& c) {
    for (std::size_t k = 0; k < cols_; ++k) (*this)(dst, k) += c * (*this)(src, k);
  }
  // (row_i, row_j) <- (a*row_i + b*row_j, c*row_i + d*row_j)
  void combine_rows(std::size_t i, std::size_t j, const Int& a, const Int& b, const Int& c, const Int& d) {
    for (std::size_t k = 0; k < cols_; ++k) {
      Int vi = (*this)(i, k), vj = (*this)(j, k);
      (*this)(i, k) = a * vi + b * vj;
      (*this)(j, k) = c * vi + d * vj;
    }
  }

  friend bool operator==(const IntMatrix& a, const IntMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.e_ == b.e_;
  }

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    IntMatrix r(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Int& aik = a(i, k);
        if (aik == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) r(i, j) += aik * b(k, j);
      }
    return r;
  }

  friend IntVector operator*(const IntMatrix& a, const IntVector& v) {
    IntVector r(a.rows_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t j = 0; j < a.cols_; ++j) r[i] += a(i, j) * v[j];
    return r;
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Int> e_;
};

/// Exact determinant by fraction-free (Bareiss) elimination.
inline Int determinant(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw DegenerateInputError("determinant: matrix not square");
  std::size_t n = m.rows();
  if (n == 0) return 1;
  IntMatrix a = m;
  Int sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t piv = k + 1;
      while (piv < n && a(piv, k) == 0) ++piv;
      if (piv == n) return 0;
      a.swap_rows(k, piv);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        a(i, j) = (a(k, k) * a(i, j) - a(i, k) * a(k, j)) / prev;
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

/// Row-style Hermite normal form: H = U*M with U unimodular, pivots
/// positive and entries above each pivot reduced into [0, pivot).
inline std::pair<IntMatrix, IntMatrix> hermite_normal_form(const IntMatrix& m) {
  IntMatrix h = m;
  IntMatrix u = IntMatrix::identity(m.rows());
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t piv = r;
    while (piv < m.rows() && h(piv, c) == 0) ++piv;
    if (piv == m.rows()) continue;
    h.swap_rows(r, piv);
    u.swap_rows(r, piv);
    for (std::size_t i = r + 1; i < m.rows(); ++i) {
      if (h(i, c) == 0) continue;
      XgcdResult x = xgcd(h(r, c), h(i, c));
      Int a = h(r, c) / x.g, b = h(i, c) / x.g;
      // [[s, t], [-b, a]] has determinant 1
      h.combine_rows(r, i, x.s, x.t, -b, a);
      u.combine_rows(r, i, x.s, x.t, -b, a);
    }
    if (h(r, c) < 0) {
      h.negate_row(r);
      u.negate_row(r);
    }
    for (std::size_t i = 0; i < r; ++i) {
      Int q = floor_div(h(i, c), h(r, c));
      if (q != 0) {
        h.add_multiple_of_row(i, r, -q);
        u.add_multiple_of_row(i, r, -q);
      }
    }
    ++r;
  }
  return {h, u};
}

inline std::size_t hnf_rank(const IntMatrix& h) {
  std::size_t r = 0;
  for (std::size_t i = 0; i < h.rows(); ++i)
    if (!h.row(i).is_zero()) ++r;
  return r;
}

inline std::size_t rank(const IntMatrix& m) { return hnf_rank(hermite_normal_form(m).first); }

/// Z-basis of {v : M v = 0}, canonicalized by HNF of the stacked basis.
inline std::vector<IntVector> integer_kernel_basis(const IntMatrix& m) {
  IntMatrix t = m.transposed();
  auto [h, u] = hermite_normal_form(t);
  std::vector<IntVector> raw;
  for (std::size_t i = 0; i < t.rows(); ++i)
    if (h.row(i).is_zero()) raw.push_back(u.row(i));
  if (raw.empty()) return raw;
  auto [k, ku] = hermite_normal_form(IntMatrix::from_rows(raw));
  std::vector<IntVector> basis;
  for (std::size_t i = 0; i < k.rows(); ++i) {
    IntVector row = k.row(i);
    if (!row.is_zero()) basis.push_back(row);
  }
  return basis;
}

/// Nonzero Smith invariant factors d1 | d2 | ..., all positive.
inline std::vector<Int> smith_invariants(const IntMatrix& m) {
  IntMatrix a = m;
  std::size_t rows = a.rows(), cols = a.cols();
  std::vector<Int> inv;
  std::size_t t = 0;
  while (t < rows && t < cols) {
    // find a nonzero entry in the remaining block
    std::size_t pi = t, pj = t;
    bool found = false;
    for (std::size_t i = t; i < rows && !found; ++i)
      for (std::size_t j = t; j < cols && !found; ++j)
        if (a(i, j) != 0) {
          pi = i;
          pj = j;
          found = true;
        }
    if (!found) break;
    a.swap_rows(t, pi);
    for (std::size_t i = 0; i < rows; ++i) std::swap(a(i, t), a(i, pj));
    // clear row and column t; plain elimination when the pivot divides the
    // entry (leaves the pivot row/column untouched), gcd combine otherwise
    // (strictly shrinks the pivot), so the alternation terminates
    bool dirty = true;
    while (dirty) {
      dirty = false;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (a(i, t) == 0) continue;
        if (a(i, t) % a(t, t) == 0) {
          a.add_multiple_of_row(i, t, -(a(i, t) / a(t, t)));
        } else {
          XgcdResult x = xgcd(a(t, t), a(i, t));
          Int p = a(t, t) / x.g, q = a(i, t) / x.g;
          a.combine_rows(t, i, x.s, x.t, -q, p);
          dirty = true;
        }
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (a(t, j) == 0) continue;
        if (a(t, j) % a(t, t) == 0) {
          Int q = a(t, j) / a(t, t);
          for (std::size_t i = 0; i < rows; ++i) a(i, j) -= q * a(i, t);
        } else {
          XgcdResult x = xgcd(a(t, t), a(t, j));
          Int p = a(t, t) / x.g, q = a(t, j) / x.g;
          for (std::size_t i = 0; i < rows; ++i) {
            Int vt = a(i, t), vj = a(i, j);
            a(i, t) = x.s * vt + x.t * vj;
            a(i, j) = -q * vt + p * vj;
          }
          dirty = true;
        }
      }
      if (!dirty) {
        // pivot must divide the remaining block for the invariant chain
        for (std::size_t i = t + 1; i < rows && !dirty; ++i)
          for (std::size_t j = t + 1; j < cols && !dirty; ++j)
            if (a(i, j) % a(t, t) != 0) {
              a.add_multiple_of_row(t, i, 1);
              dirty = true;
            }
      }
    }
    if (a(t, t) < 0) a.negate_row(t);
    inv.push_back(a(t, t));
    ++t;
  }
  return inv;
}

/// True iff the vectors extend to a Z-basis of the ambient lattice
/// (linearly independent with all Smith invariant factors 1).
inline bool is_unimodular_extension(const std::vector<IntVector>& vectors) {
  if (vectors.empty()) return true;
  IntMatrix m = IntMatrix::from_rows(vectors);
  if (rank(m) != vectors.size()) return false;
  for (const Int& d : smith_invariants(m))
    if (d != 1) return false;
  return true;
}

/// Solve A x = b exactly over Q; nullopt if inconsistent. For full column
/// rank A the solution is unique.
inline std::optional<RatVector> solve_rational(const IntMatrix& a, const RatVector& b) {
  std::size_t rows = a.rows(), cols = a.cols();
  std::vector<std::vector<Rat>> w(rows, std::vector<Rat>(cols + 1));
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) w[i][j] = Rat(a(i, j));
    w[i][cols] = b[i];
  }
  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && w[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(w[r], w[piv]);
    Rat inv = 1 / w[r][c];
    for (std::size_t j = c; j <= cols; ++j) w[r][j] *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || w[i][c] == 0) continue;
      Rat f = w[i][c];
      for (std::size_t j = c; j <= cols; ++j) w[i][j] -= f * w[r][j];
    }
    pivot_col.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < rows; ++i)
    if (w[i][cols] != 0) return std::nullopt;
  RatVector x(cols);
  for (std::size_t k = 0; k < pivot_col.size(); ++k) x[pivot_col[k]] = w[k][cols];
  return x;
}

/// Coefficients c with sum c_i basis_i = target, or nullopt when target is
/// off the span. The basis must be linearly independent.
inline std::optional<RatVector> express_in_basis(const std::vector<IntVector>& basis,
                                                 const IntVector& target) {
  if (basis.empty()) throw DegenerateInputError("express_in_basis: empty basis");
  IntMatrix a = IntMatrix::from_columns(basis);
  if (rank(a) != basis.size())
    throw DegenerateInputError("express_in_basis: basis vectors are linearly dependent");
  return solve_rational(a, RatVector(target));
}

/// Integer coordinates of target in a lattice basis; nullopt when target is
/// off the span, IntegralityError when the coordinates are fractional.
inline std::optional<IntVector> express_in_lattice_basis(const std::vector<IntVector>& basis,
                                                         const IntVector& target) {
  auto c = express_in_basis(basis, target);
  if (!c) return std::nullopt;
  IntVector r(c->size());
  for (std::size_t i = 0; i < c->size(); ++i) {
    if (denominator((*c)[i]) != 1)
      throw IntegralityError("express_in_lattice_basis: fractional coordinate");
    r[i] = numerator((*c)[i]);
  }
  return r;
}

}  // namespace toricmdp
