#pragma once

// Dense integer matrices over arbitrary-precision integers, with Smith and
// Hermite normal forms.

#include "bigint.hpp"
#include "error.hpp"

#include <algorithm>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace modelspace {

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  IntMatrix(std::size_t rows, std::size_t cols, std::vector<BigInt> row_major)
      : rows_(rows), cols_(cols), data_(std::move(row_major)) {
    if (data_.size() != rows * cols) throw DomainError("matrix data size mismatch");
  }

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  BigInt& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const BigInt& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols_ != b.rows_) throw DomainError("matrix dimension mismatch in product");
    IntMatrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const auto& x = a(i, k);
        if (x == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += x * b(k, j);
      }
    return out;
  }

  IntMatrix transposed() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const BigInt& x) { return x == 0; });
  }

  // "[[1,2],[3,4]]"
  std::string str() const {
    std::ostringstream o;
    o << '[';
    for (std::size_t i = 0; i < rows_; ++i) {
      o << (i ? ",[" : "[");
      for (std::size_t j = 0; j < cols_; ++j) o << (j ? "," : "") << (*this)(i, j);
      o << ']';
    }
    o << ']';
    return o.str();
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
  }
  // row a += q * row b
  void add_row(std::size_t a, std::size_t b, const BigInt& q) {
    if (q == 0) return;
    for (std::size_t j = 0; j < cols_; ++j)
      if ((*this)(b, j) != 0) (*this)(a, j) += q * (*this)(b, j);
  }
  // col a += q * col b
  void add_col(std::size_t a, std::size_t b, const BigInt& q) {
    if (q == 0) return;
    for (std::size_t i = 0; i < rows_; ++i)
      if ((*this)(i, b) != 0) (*this)(i, a) += q * (*this)(i, b);
  }
  void negate_row(std::size_t a) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(a, j) = -(*this)(a, j);
  }
  void negate_col(std::size_t a) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, a) = -(*this)(i, a);
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<BigInt> data_;
};

/// U * M * V = diag(factors, 0...). Only the left transform is tracked (and
/// its inverse), which is all homology coordinates need.
struct SmithForm {
  std::vector<BigInt> factors;  // nonzero invariant factors, each divides the next
  std::size_t rank() const { return factors.size(); }
  std::optional<IntMatrix> left;          // U (rows x rows), unimodular
  std::optional<IntMatrix> left_inverse;  // U^{-1}
};

namespace detail {

// Floor division so that remainders lie in [0, |b|).
inline BigInt floor_div(const BigInt& a, const BigInt& b) {
  BigInt q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) q -= 1;
  return q;
}

}  // namespace detail

/// Smith normal form by elementary row/column reduction, choosing the
/// smallest nonzero entry of the remaining block as pivot.
inline SmithForm smith(IntMatrix m, bool with_transform = false) {
  const std::size_t R = m.rows(), C = m.cols();
  SmithForm out;
  IntMatrix U, Uinv;
  if (with_transform) {
    U = IntMatrix::identity(R);
    Uinv = IntMatrix::identity(R);
  }
  auto row_swap = [&](std::size_t a, std::size_t b) {
    m.swap_rows(a, b);
    if (with_transform) {
      U.swap_rows(a, b);
      Uinv.swap_cols(a, b);
    }
  };
  auto row_add = [&](std::size_t a, std::size_t b, const BigInt& q) {
    m.add_row(a, b, q);
    if (with_transform) {
      U.add_row(a, b, q);
      Uinv.add_col(b, a, -q);
    }
  };
  auto row_neg = [&](std::size_t a) {
    m.negate_row(a);
    if (with_transform) {
      U.negate_row(a);
      Uinv.negate_col(a);
    }
  };

  std::size_t t = 0;
  while (t < R && t < C) {
    // smallest nonzero pivot in the block [t.., t..]
    std::optional<std::pair<std::size_t, std::size_t>> best;
    BigInt best_abs;
    for (std::size_t i = t; i < R; ++i)
      for (std::size_t j = t; j < C; ++j) {
        const auto& x = m(i, j);
        if (x == 0) continue;
        BigInt ax = abs(x);
        if (!best || ax < best_abs) {
          best = {i, j};
          best_abs = ax;
          if (best_abs == 1) goto found;
        }
      }
  found:
    if (!best) break;
    row_swap(t, best->first);
    m.swap_cols(t, best->second);

    for (;;) {
      bool dirty = false;
      for (std::size_t i = t + 1; i < R; ++i) {
        if (m(i, t) == 0) continue;
        BigInt q = detail::floor_div(m(i, t), m(t, t));
        row_add(i, t, -q);
        if (m(i, t) != 0) {
          row_swap(t, i);
          dirty = true;
        }
      }
      for (std::size_t j = t + 1; j < C; ++j) {
        if (m(t, j) == 0) continue;
        BigInt q = detail::floor_div(m(t, j), m(t, t));
        m.add_col(j, t, -q);
        if (m(t, j) != 0) {
          m.swap_cols(t, j);
          dirty = true;
        }
      }
      if (dirty) continue;
      // divisibility of the remaining block by the pivot
      std::optional<std::size_t> bad_row;
      for (std::size_t i = t + 1; i < R && !bad_row; ++i)
        for (std::size_t j = t + 1; j < C; ++j)
          if (m(i, j) % m(t, t) != 0) {
            bad_row = i;
            break;
          }
      if (!bad_row) break;
      row_add(t, *bad_row, BigInt(1));
    }
    if (m(t, t) < 0) row_neg(t);
    out.factors.push_back(m(t, t));
    ++t;
  }
  if (with_transform) {
    out.left = std::move(U);
    out.left_inverse = std::move(Uinv);
  }
  return out;
}

inline std::size_t rank(const IntMatrix& m) { return smith(m).rank(); }

/// Canonical basis of the column lattice of m: lower-echelon Hermite form,
/// positive pivots, entries left of each pivot reduced into [0, pivot).
/// Two matrices have equal column lattices iff their results are equal.
inline IntMatrix column_hermite(IntMatrix m) {
  const std::size_t R = m.rows(), C = m.cols();
  std::size_t col = 0;
  std::vector<std::pair<std::size_t, std::size_t>> pivots;  // (row, col)
  for (std::size_t r = 0; r < R && col < C; ++r) {
    // gcd-reduce row r across columns col.. into column col
    for (;;) {
      std::optional<std::size_t> piv;
      for (std::size_t j = col; j < C; ++j)
        if (m(r, j) != 0 && (!piv || abs(m(r, j)) < abs(m(r, *piv)))) piv = j;
      if (!piv) break;
      m.swap_cols(col, *piv);
      bool done = true;
      for (std::size_t j = col + 1; j < C; ++j) {
        if (m(r, j) == 0) continue;
        m.add_col(j, col, -detail::floor_div(m(r, j), m(r, col)));
        if (m(r, j) != 0) done = false;
      }
      if (done) break;
    }
    if (m(r, col) == 0) continue;
    if (m(r, col) < 0) m.negate_col(col);
    pivots.push_back({r, col});
    ++col;
  }
  // reduce entries to the left of each pivot
  for (auto [r, c] : pivots)
    for (std::size_t j = 0; j < c; ++j) {
      BigInt q = detail::floor_div(m(r, j), m(r, c));
      m.add_col(j, c, -q);
    }
  IntMatrix out(R, col);
  for (std::size_t i = 0; i < R; ++i)
    for (std::size_t j = 0; j < col; ++j) out(i, j) = m(i, j);
  return out;
}

}  // namespace modelspace
