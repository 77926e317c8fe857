#pragma once

// Exact integer linear algebra: dense matrices over arbitrary-precision
// integers, Smith normal form, and finitely generated abelian groups.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "cytop/errors.hpp"

namespace cytop {

using BigInt = boost::multiprecision::cpp_int;

/// Dense row-major matrix of arbitrary-precision integers. Zero rows or zero
/// columns are allowed and behave as the corresponding empty linear maps.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  IntMatrix(std::initializer_list<std::initializer_list<long long>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
      if (row.size() != cols_) throw Error(ErrorKind::Parse, "ragged matrix literal");
      for (long long x : row) data_.emplace_back(x);
    }
  }

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  /// Builds the matrix whose columns are the given integer vectors, each of
  /// length `rows`.
  template <typename Vector>
  static IntMatrix from_columns(std::size_t rows, const std::vector<Vector>& columns) {
    IntMatrix m(rows, columns.size());
    for (std::size_t j = 0; j < columns.size(); ++j) {
      if (columns[j].size() != rows) throw Error(ErrorKind::LatticeMismatch, "column length differs from row count");
      for (std::size_t i = 0; i < rows; ++i) m(i, j) = BigInt(columns[j][i]);
    }
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  BigInt& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const BigInt& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  IntMatrix transpose() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  bool is_diagonal() const {
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        if (i != j && (*this)(i, j) != 0) return false;
    return true;
  }

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols_ != b.rows_) throw Error(ErrorKind::LatticeMismatch, "matrix product shape mismatch");
    IntMatrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const BigInt& aik = a(i, k);
        if (aik == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  }

  friend bool operator==(const IntMatrix& a, const IntMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  // Elementary operations. Each is invertible over the integers.
  void add_row_multiple(std::size_t target, std::size_t source, const BigInt& k) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(target, j) += k * (*this)(source, j);
  }
  void add_col_multiple(std::size_t target, std::size_t source, const BigInt& k) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, target) += k * (*this)(i, source);
  }
  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
  }
  void negate_row(std::size_t r) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(r, j) = -(*this)(r, j);
  }
  void negate_col(std::size_t c) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, c) = -(*this)(i, c);
  }

  std::string to_string() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) os << (j ? " " : "") << (*this)(i, j);
      os << '\n';
    }
    return os.str();
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<BigInt> data_;
};

/// Fraction-free (Bareiss) determinant.
inline BigInt determinant(IntMatrix m) {
  if (m.rows() != m.cols()) throw Error(ErrorKind::LatticeMismatch, "determinant of non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  BigInt sign = 1;
  BigInt prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && m(p, k) == 0) ++p;
      if (p == n) return 0;
      m.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

/// u * a * v == d, with u and v unimodular and d in Smith normal form.
struct SmithDecomposition {
  IntMatrix u;
  IntMatrix d;
  IntMatrix v;
  IntMatrix u_inverse;
  IntMatrix v_inverse;

  /// Number of nonzero diagonal entries, i.e. the rank of the input.
  std::size_t rank() const {
    std::size_t r = 0;
    const std::size_t k = std::min(d.rows(), d.cols());
    while (r < k && d(r, r) != 0) ++r;
    return r;
  }
};

namespace detail {

inline std::optional<std::pair<std::size_t, std::size_t>> min_abs_entry(const IntMatrix& d, std::size_t t) {
  std::optional<std::pair<std::size_t, std::size_t>> best;
  BigInt best_abs;
  for (std::size_t i = t; i < d.rows(); ++i)
    for (std::size_t j = t; j < d.cols(); ++j) {
      if (d(i, j) == 0) continue;
      BigInt a = abs(d(i, j));
      if (!best || a < best_abs) {
        best = {i, j};
        best_abs = a;
        if (best_abs == 1) return best;
      }
    }
  return best;
}

}  // namespace detail

/// Smith normal form by elementary row/column operations with a
/// minimal-absolute-value pivot. Tracks the transforms and their inverses.
inline SmithDecomposition smith_normal_form(const IntMatrix& a) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  SmithDecomposition s{IntMatrix::identity(m), a, IntMatrix::identity(n), IntMatrix::identity(m),
                       IntMatrix::identity(n)};
  IntMatrix& d = s.d;

  // Row op on d mirrored onto u (left) and u_inverse (right, inverse op).
  auto row_add = [&](std::size_t target, std::size_t source, const BigInt& k) {
    d.add_row_multiple(target, source, k);
    s.u.add_row_multiple(target, source, k);
    s.u_inverse.add_col_multiple(source, target, -k);
  };
  auto row_swap = [&](std::size_t x, std::size_t y) {
    d.swap_rows(x, y);
    s.u.swap_rows(x, y);
    s.u_inverse.swap_cols(x, y);
  };
  auto col_add = [&](std::size_t target, std::size_t source, const BigInt& k) {
    d.add_col_multiple(target, source, k);
    s.v.add_col_multiple(target, source, k);
    s.v_inverse.add_row_multiple(source, target, -k);
  };
  auto col_swap = [&](std::size_t x, std::size_t y) {
    d.swap_cols(x, y);
    s.v.swap_cols(x, y);
    s.v_inverse.swap_rows(x, y);
  };

  const std::size_t steps = std::min(m, n);
  for (std::size_t t = 0; t < steps; ++t) {
    auto pivot = detail::min_abs_entry(d, t);
    if (!pivot) break;
    row_swap(t, pivot->first);
    col_swap(t, pivot->second);

    for (;;) {
      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (d(i, t) == 0) continue;
        BigInt q = d(i, t) / d(t, t);
        if (q != 0) row_add(i, t, -q);
        if (d(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (d(t, j) == 0) continue;
        BigInt q = d(t, j) / d(t, t);
        if (q != 0) col_add(j, t, -q);
        if (d(t, j) != 0) clean = false;
      }
      if (!clean) {
        // A remainder smaller than the pivot survives in row or column t.
        std::size_t bi = t, bj = t;
        BigInt best = abs(d(t, t));
        for (std::size_t i = t + 1; i < m; ++i)
          if (d(i, t) != 0 && abs(d(i, t)) < best) best = abs(d(i, t)), bi = i, bj = t;
        for (std::size_t j = t + 1; j < n; ++j)
          if (d(t, j) != 0 && abs(d(t, j)) < best) best = abs(d(t, j)), bi = t, bj = j;
        row_swap(t, bi);
        col_swap(t, bj);
        continue;
      }
      // Divisibility: fold an offending row into row t and reduce again.
      bool divides = true;
      for (std::size_t i = t + 1; i < m && divides; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (d(i, j) % d(t, t) != 0) {
            row_add(t, i, 1);
            divides = false;
            break;
          }
      if (divides) break;
    }
    if (d(t, t) < 0) {
      d.negate_row(t);
      s.u.negate_row(t);
      s.u_inverse.negate_col(t);
    }
  }
  return s;
}

/// Integer rank via Smith normal form.
inline std::size_t rank(const IntMatrix& a) { return smith_normal_form(a).rank(); }

/// A finitely generated abelian group Z^rank + Z/d_1 + ... + Z/d_k with
/// d_i >= 2 and d_i | d_{i+1}.
class AbelianGroup {
 public:
  AbelianGroup() = default;

  /// Normalizes an arbitrary list of cyclic orders (1s dropped, 0s rejected)
  /// into invariant-factor form.
  explicit AbelianGroup(std::size_t rank, const std::vector<BigInt>& cyclic_orders = {}) : rank_(rank) {
    std::vector<BigInt> orders;
    for (const auto& o : cyclic_orders) {
      if (o == 0) throw Error(ErrorKind::Unsupported, "cyclic order 0; use the rank field for free summands");
      if (abs(o) > 1) orders.push_back(abs(o));
    }
    if (orders.empty()) return;
    IntMatrix diag(orders.size(), orders.size());
    for (std::size_t i = 0; i < orders.size(); ++i) diag(i, i) = orders[i];
    const auto s = smith_normal_form(diag);
    for (std::size_t i = 0; i < orders.size(); ++i)
      if (s.d(i, i) > 1) factors_.push_back(s.d(i, i));
  }

  static AbelianGroup free(std::size_t rank) { return AbelianGroup(rank); }

  std::size_t rank() const noexcept { return rank_; }
  const std::vector<BigInt>& invariant_factors() const noexcept { return factors_; }
  bool is_trivial() const noexcept { return rank_ == 0 && factors_.empty(); }
  bool is_free() const noexcept { return factors_.empty(); }

  AbelianGroup torsion() const {
    AbelianGroup t;
    t.factors_ = factors_;
    return t;
  }
  AbelianGroup free_part() const { return AbelianGroup(rank_); }

  BigInt torsion_order() const {
    BigInt o = 1;
    for (const auto& f : factors_) o *= f;
    return o;
  }

  friend AbelianGroup direct_sum(const AbelianGroup& a, const AbelianGroup& b) {
    std::vector<BigInt> orders = a.factors_;
    orders.insert(orders.end(), b.factors_.begin(), b.factors_.end());
    return AbelianGroup(a.rank_ + b.rank_, orders);
  }

  friend bool operator==(const AbelianGroup& a, const AbelianGroup& b) {
    return a.rank_ == b.rank_ && a.factors_ == b.factors_;
  }

  /// "0", "Z", "Z^3", "Z/5", "Z^2 + Z/2 + Z/4".
  std::string to_string() const {
    if (is_trivial()) return "0";
    std::ostringstream os;
    bool first = true;
    if (rank_ > 0) {
      os << "Z";
      if (rank_ > 1) os << '^' << rank_;
      first = false;
    }
    for (const auto& f : factors_) {
      os << (first ? "" : " + ") << "Z/" << f;
      first = false;
    }
    return os.str();
  }

 private:
  std::size_t rank_ = 0;
  std::vector<BigInt> factors_;
};

inline std::ostream& operator<<(std::ostream& os, const AbelianGroup& g) { return os << g.to_string(); }

/// Z^rows / (column span of a).
inline AbelianGroup cokernel(const IntMatrix& a) {
  const auto s = smith_normal_form(a);
  const std::size_t r = s.rank();
  std::vector<BigInt> orders;
  for (std::size_t i = 0; i < r; ++i) orders.push_back(s.d(i, i));
  return AbelianGroup(a.rows() - r, orders);
}

/// Basis (as columns) of the integer kernel {x : a x = 0}. The basis is
/// saturated: it spans the full lattice of integer solutions.
inline IntMatrix integer_kernel(const IntMatrix& a) {
  const auto s = smith_normal_form(a);
  const std::size_t r = s.rank();
  IntMatrix k(a.cols(), a.cols() - r);
  for (std::size_t j = r; j < a.cols(); ++j)
    for (std::size_t i = 0; i < a.cols(); ++i) k(i, j - r) = s.v(i, j);
  return k;
}

}  // namespace cytop
