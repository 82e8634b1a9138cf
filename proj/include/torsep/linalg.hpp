#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "torsep/error.hpp"
#include "torsep/number.hpp"

namespace torsep {

/// Dense integer matrix, row-major. Column j of a weight matrix is the
/// character of coordinate j.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  static IntMatrix from_columns(std::span<const IntVector> columns, std::size_t rows) {
    IntMatrix m(rows, columns.size());
    for (std::size_t j = 0; j < columns.size(); ++j) {
      if (columns[j].size() != rows) throw InputError("column length does not match row count");
      for (std::size_t i = 0; i < rows; ++i) m(i, j) = columns[j][i];
    }
    return m;
  }

  static IntMatrix from_rows(std::span<const IntVector> row_list, std::size_t cols) {
    IntMatrix m(row_list.size(), cols);
    for (std::size_t i = 0; i < row_list.size(); ++i) {
      if (row_list[i].size() != cols) throw InputError("row length does not match column count");
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = row_list[i][j];
    }
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Integer& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Integer& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  IntVector row(std::size_t r) const {
    return IntVector(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                     data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
  }

  IntVector column(std::size_t c) const {
    IntVector v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
    return v;
  }

  IntVector operator*(const IntVector& x) const {
    if (x.size() != cols_) throw InputError("matrix-vector dimension mismatch");
    IntVector y(rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) y[r] += (*this)(r, c) * x[c];
    return y;
  }

  IntMatrix transpose() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  bool operator==(const IntMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

/// Z-basis of an integer kernel {c : A c = 0}.
struct LatticeBasis {
  std::size_t ambient_dim = 0;
  std::vector<IntVector> basis;

  std::size_t rank() const noexcept { return basis.size(); }
  bool operator==(const LatticeBasis&) const = default;
};

namespace detail {

// Reduced row echelon form over Q; returns pivot columns.
inline std::vector<std::size_t> rref(std::vector<RatVector>& m, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t c = 0; c < cols && row < m.size(); ++c) {
    std::size_t p = row;
    while (p < m.size() && m[p][c] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[row], m[p]);
    Rational inv = 1 / m[row][c];
    for (auto& x : m[row]) x *= inv;
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == row || m[r][c] == 0) continue;
      Rational f = m[r][c];
      for (std::size_t k = 0; k < m[r].size(); ++k) m[r][k] -= f * m[row][k];
    }
    pivots.push_back(c);
    ++row;
  }
  return pivots;
}

inline std::vector<RatVector> rational_rows(const IntMatrix& a) {
  std::vector<RatVector> m(a.rows(), RatVector(a.cols()));
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) m[r][c] = a(r, c);
  return m;
}

// Column operation on (i, j): col_i <- s*col_i + t*col_j, col_j <- u*col_i + v*col_j.
inline void combine_columns(IntMatrix& m, std::size_t i, std::size_t j, const Integer& s,
                            const Integer& t, const Integer& u, const Integer& v) {
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Integer a = m(r, i);
    Integer b = m(r, j);
    m(r, i) = s * a + t * b;
    m(r, j) = u * a + v * b;
  }
}

inline void gcdext(Integer& g, Integer& s, Integer& t, const Integer& a, const Integer& b) {
  mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
}

inline Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

}  // namespace detail

inline std::size_t rank(const IntMatrix& a) {
  auto m = detail::rational_rows(a);
  return detail::rref(m, a.cols()).size();
}

inline std::size_t rank_of_vectors(std::span<const IntVector> vectors, std::size_t dim) {
  if (vectors.empty()) return 0;
  return rank(IntMatrix::from_rows(vectors, dim));
}

/// Row-style Hermite normal form of the lattice spanned by `rows`: positive
/// pivots, entries above each pivot reduced into [0, pivot). Zero rows dropped.
/// The result is a canonical basis of the lattice.
inline std::vector<IntVector> hermite_normal_form(std::vector<IntVector> rows, std::size_t dim) {
  std::size_t top = 0;
  for (std::size_t c = 0; c < dim && top < rows.size(); ++c) {
    for (std::size_t r = top + 1; r < rows.size(); ++r) {
      if (rows[r][c] == 0) continue;
      Integer g, s, t;
      detail::gcdext(g, s, t, rows[top][c], rows[r][c]);
      Integer p = rows[top][c] / g;
      Integer q = rows[r][c] / g;
      for (std::size_t k = 0; k < dim; ++k) {
        Integer a = rows[top][k];
        Integer b = rows[r][k];
        rows[top][k] = s * a + t * b;
        rows[r][k] = -q * a + p * b;
      }
    }
    if (rows[top][c] == 0) continue;
    if (rows[top][c] < 0) rows[top] = negated(std::move(rows[top]));
    for (std::size_t r = 0; r < top; ++r) {
      Integer f = detail::floor_div(rows[r][c], rows[top][c]);
      if (f == 0) continue;
      for (std::size_t k = 0; k < dim; ++k) rows[r][k] -= f * rows[top][k];
    }
    ++top;
  }
  rows.resize(top);
  return rows;
}

/// Saturated Z-basis of {c in Z^n : A c = 0}, obtained from unimodular column
/// reduction of A and returned in Hermite normal form.
inline LatticeBasis kernel_lattice(const IntMatrix& a) {
  const std::size_t n = a.cols();
  IntMatrix h = a;
  IntMatrix u = IntMatrix::identity(n);
  std::size_t pivot = 0;
  for (std::size_t r = 0; r < a.rows() && pivot < n; ++r) {
    for (std::size_t c = pivot + 1; c < n; ++c) {
      if (h(r, c) == 0) continue;
      Integer g, s, t;
      detail::gcdext(g, s, t, h(r, pivot), h(r, c));
      Integer p = h(r, pivot) / g;
      Integer q = h(r, c) / g;
      detail::combine_columns(h, pivot, c, s, t, -q, p);
      detail::combine_columns(u, pivot, c, s, t, -q, p);
    }
    if (h(r, pivot) != 0) ++pivot;
  }
  std::vector<IntVector> kernel;
  for (std::size_t c = pivot; c < n; ++c) kernel.push_back(u.column(c));
  return LatticeBasis{n, hermite_normal_form(std::move(kernel), n)};
}

/// Determinant of a square integer matrix (fraction-free elimination).
inline Integer determinant(IntMatrix m) {
  const std::size_t n = m.rows();
  if (n != m.cols()) throw InputError("determinant of a non-square matrix");
  if (n == 0) return 1;
  Integer sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && m(p, k) == 0) ++p;
      if (p == n) return 0;
      for (std::size_t c = 0; c < n; ++c) std::swap(m(k, c), m(p, c));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

/// Indices of a maximal linearly independent subset of the rows, chosen greedily
/// in order.
inline IndexSet independent_rows(const IntMatrix& a) {
  IndexSet chosen;
  std::vector<IntVector> picked;
  for (std::size_t r = 0; r < a.rows(); ++r) {
    picked.push_back(a.row(r));
    if (rank_of_vectors(picked, a.cols()) == picked.size()) {
      chosen.push_back(r);
    } else {
      picked.pop_back();
    }
  }
  return chosen;
}

/// Submatrix with the given rows and all columns.
inline IntMatrix select_rows(const IntMatrix& a, const IndexSet& rows) {
  IntMatrix s(rows.size(), a.cols());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t c = 0; c < a.cols(); ++c) s(i, c) = a(rows[i], c);
  return s;
}

/// Submatrix with all rows and the given columns.
inline IntMatrix select_columns(const IntMatrix& a, const IndexSet& cols) {
  IntMatrix s(a.rows(), cols.size());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t j = 0; j < cols.size(); ++j) s(r, j) = a(r, cols[j]);
  return s;
}

/// Unique rational solution x of M x = b for M with full column rank, or
/// nullopt when the system is inconsistent.
inline std::optional<RatVector> solve_full_column_rank(const IntMatrix& m, const RatVector& b) {
  const std::size_t n = m.cols();
  std::vector<RatVector> aug(m.rows(), RatVector(n + 1));
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < n; ++c) aug[r][c] = m(r, c);
    aug[r][n] = b[r];
  }
  auto pivots = detail::rref(aug, n + 1);
  if (!pivots.empty() && pivots.back() == n) return std::nullopt;
  if (pivots.size() != n) throw InputError("matrix does not have full column rank");
  RatVector x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = aug[i][n];
  return x;
}

/// Integer coordinates of v in the given lattice basis, if v lies in the lattice.
inline std::optional<IntVector> lattice_coordinates(const LatticeBasis& lattice, const IntVector& v) {
  if (lattice.basis.empty()) {
    if (is_zero(v)) return IntVector{};
    return std::nullopt;
  }
  IntMatrix b = IntMatrix::from_columns(lattice.basis, lattice.ambient_dim);
  auto x = solve_full_column_rank(b, to_rational(v));
  if (!x) return std::nullopt;
  IntVector z;
  for (const auto& q : *x) {
    if (q.get_den() != 1) return std::nullopt;
    z.push_back(Integer(q.get_num()));
  }
  return z;
}

}  // namespace torsep
