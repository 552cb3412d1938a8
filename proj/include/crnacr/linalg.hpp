#pragma once

#include "crnacr/errors.hpp"
#include "crnacr/rational.hpp"

#include <algorithm>
#include <cstddef>
#include <set>
#include <stdexcept>
#include <vector>

namespace crnacr {

/// Dense row-major matrix of exact rationals. Sized for reaction networks
/// (tens of rows/columns), not for bulk numerics.
class RatMat {
 public:
  RatMat() = default;
  RatMat(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}

  static RatMat from_rows(const std::vector<RatVec>& rows) {
    RatMat m(rows.size(), rows.empty() ? 0 : rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != m.cols_)
        throw std::invalid_argument("ragged row list");
      for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  Rational& operator()(std::size_t i, std::size_t j) {
    return data_[i * cols_ + j];
  }
  const Rational& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  RatVec row(std::size_t i) const {
    return RatVec(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
  }

  bool operator==(const RatMat& other) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

inline RatMat mul(const RatMat& a, const RatMat& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("shape mismatch");
  RatMat c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
    }
  return c;
}

/// Reduced row echelon form in place. Pivot choice is deterministic: scan
/// columns left to right, take the first row with a nonzero entry. Returns
/// the rank.
inline std::size_t rref_in_place(RatMat& a) {
  std::size_t pivot_row = 0;
  for (std::size_t col = 0; col < a.cols() && pivot_row < a.rows(); ++col) {
    std::size_t r = pivot_row;
    while (r < a.rows() && a(r, col) == 0) ++r;
    if (r == a.rows()) continue;
    if (r != pivot_row)
      for (std::size_t j = 0; j < a.cols(); ++j)
        std::swap(a(r, j), a(pivot_row, j));
    const Rational inv = Rational(1) / a(pivot_row, col);
    for (std::size_t j = col; j < a.cols(); ++j) a(pivot_row, j) *= inv;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == pivot_row || a(i, col) == 0) continue;
      const Rational factor = a(i, col);
      for (std::size_t j = col; j < a.cols(); ++j)
        a(i, j) -= factor * a(pivot_row, j);
    }
    ++pivot_row;
  }
  return pivot_row;
}

inline std::size_t rank(RatMat a) { return rref_in_place(a); }

/// Nonzero rows of the RREF: a canonical basis of the row space.
inline std::vector<RatVec> row_space_basis(RatMat a) {
  const std::size_t r = rref_in_place(a);
  std::vector<RatVec> basis;
  basis.reserve(r);
  for (std::size_t i = 0; i < r; ++i) basis.push_back(a.row(i));
  return basis;
}

/// Right nullspace {x : a x = 0}, one basis vector per free column, in
/// ascending free-column order.
inline std::vector<RatVec> nullspace_basis(RatMat a) {
  const std::size_t n = a.cols();
  rref_in_place(a);
  std::vector<std::ptrdiff_t> pivot_of_col(n, -1);
  std::size_t row = 0;
  for (std::size_t col = 0; col < n && row < a.rows(); ++col) {
    if (a(row, col) == 1) {
      bool is_pivot = true;
      for (std::size_t j = 0; j < col; ++j)
        if (a(row, j) != 0) is_pivot = false;
      if (is_pivot) {
        pivot_of_col[col] = static_cast<std::ptrdiff_t>(row);
        ++row;
      }
    }
  }
  std::vector<RatVec> basis;
  for (std::size_t col = 0; col < n; ++col) {
    if (pivot_of_col[col] >= 0) continue;
    RatVec x(n, Rational(0));
    x[col] = 1;
    for (std::size_t c = 0; c < n; ++c)
      if (pivot_of_col[c] >= 0)
        x[c] = -a(static_cast<std::size_t>(pivot_of_col[c]), col);
    basis.push_back(std::move(x));
  }
  return basis;
}

namespace detail {

// One linear inequality sum_j coeffs[j]*t_j >= rhs, scaled so the first
// nonzero entry has absolute value 1 (positive scaling preserves it).
inline void normalize_constraint(RatVec& row) {
  for (const Rational& v : row) {
    if (v != 0) {
      const Rational scale = Rational(1) / boost::multiprecision::abs(v);
      for (Rational& w : row) w *= scale;
      return;
    }
  }
}

}  // namespace detail

/// Decides, exactly, whether span{basis} contains a strictly positive
/// vector of dimension `dim`. For a subspace this is equivalent to
/// containing a vector with every coordinate >= 1, which Fourier-Motzkin
/// elimination settles over the rationals.
inline bool span_contains_positive(const std::vector<RatVec>& basis,
                                   std::size_t dim) {
  const std::size_t d = basis.size();
  // Constraint rows: [coeff over t_1..t_d | rhs], meaning coeff . t >= rhs.
  std::vector<RatVec> constraints;
  constraints.reserve(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    RatVec row(d + 1);
    for (std::size_t j = 0; j < d; ++j) row[j] = basis[j][i];
    row[d] = 1;
    constraints.push_back(std::move(row));
  }
  for (std::size_t var = 0; var < d; ++var) {
    std::vector<RatVec> kept, lower, upper;
    for (RatVec& row : constraints) {
      const int s = sign(row[var]);
      if (s == 0) {
        kept.push_back(std::move(row));
        continue;
      }
      const Rational scale = Rational(1) / boost::multiprecision::abs(row[var]);
      for (Rational& v : row) v *= scale;
      (s > 0 ? lower : upper).push_back(std::move(row));
    }
    for (const RatVec& lo : lower)
      for (const RatVec& up : upper) {
        RatVec combined(d + 1);
        for (std::size_t j = 0; j < d + 1; ++j) combined[j] = lo[j] + up[j];
        combined[var] = 0;
        kept.push_back(std::move(combined));
      }
    std::set<RatVec> unique;
    constraints.clear();
    for (RatVec& row : kept) {
      bool all_zero_coeffs = true;
      for (std::size_t j = 0; j < d; ++j)
        if (row[j] != 0) all_zero_coeffs = false;
      if (all_zero_coeffs) {
        if (row[d] > 0) return false;  // 0 >= positive: infeasible
        continue;
      }
      detail::normalize_constraint(row);
      if (unique.insert(row).second) constraints.push_back(row);
    }
    if (constraints.size() > 200000)
      throw NumericError("Fourier-Motzkin constraint blow-up");
  }
  for (const RatVec& row : constraints)
    if (row[d] > 0) return false;
  return true;
}

}  // namespace crnacr
