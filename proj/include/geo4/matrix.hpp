#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "geo4/errors.hpp"

namespace geo4 {

namespace checked {

inline std::int64_t add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r))
    throw Overflow("integer addition overflow");
  return r;
}

inline std::int64_t sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r))
    throw Overflow("integer subtraction overflow");
  return r;
}

inline std::int64_t mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r))
    throw Overflow("integer multiplication overflow");
  return r;
}

} // namespace checked

/// Dense row-major integer matrix with overflow-checked arithmetic.
class IntMatrix {
public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), a_(rows * cols, 0) {}
  IntMatrix(std::initializer_list<std::initializer_list<std::int64_t>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    for (auto &row : init) {
      if (row.size() != cols_)
        throw ParamOutOfRange("ragged matrix literal");
      a_.insert(a_.end(), row.begin(), row.end());
    }
  }

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      m(i, i) = 1;
    return m;
  }

  [[nodiscard]] std::size_t rows() const { return rows_; }
  [[nodiscard]] std::size_t cols() const { return cols_; }

  std::int64_t &operator()(std::size_t r, std::size_t c) {
    return a_[r * cols_ + c];
  }
  std::int64_t operator()(std::size_t r, std::size_t c) const {
    return a_[r * cols_ + c];
  }

  [[nodiscard]] IntMatrix transpose() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        t(j, i) = (*this)(i, j);
    return t;
  }

  [[nodiscard]] bool is_zero() const {
    return std::all_of(a_.begin(), a_.end(), [](auto v) { return v == 0; });
  }

  IntMatrix operator-() const {
    IntMatrix r = *this;
    for (auto &v : r.a_)
      v = checked::sub(0, v);
    return r;
  }

  friend IntMatrix operator*(const IntMatrix &x, const IntMatrix &y) {
    if (x.cols_ != y.rows_)
      throw ParamOutOfRange("matrix shape mismatch in product");
    IntMatrix r(x.rows_, y.cols_);
    for (std::size_t i = 0; i < x.rows_; ++i)
      for (std::size_t k = 0; k < x.cols_; ++k) {
        auto v = x(i, k);
        if (v == 0)
          continue;
        for (std::size_t j = 0; j < y.cols_; ++j)
          r(i, j) = checked::add(r(i, j), checked::mul(v, y(k, j)));
      }
    return r;
  }

  friend std::vector<std::int64_t> operator*(const IntMatrix &x,
                                             const std::vector<std::int64_t> &v) {
    if (x.cols_ != v.size())
      throw ParamOutOfRange("matrix/vector shape mismatch");
    std::vector<std::int64_t> r(x.rows_, 0);
    for (std::size_t i = 0; i < x.rows_; ++i)
      for (std::size_t k = 0; k < x.cols_; ++k)
        r[i] = checked::add(r[i], checked::mul(x(i, k), v[k]));
    return r;
  }

  friend bool operator==(const IntMatrix &, const IntMatrix &) = default;

  void swap_rows(std::size_t i, std::size_t j) {
    for (std::size_t c = 0; c < cols_; ++c)
      std::swap((*this)(i, c), (*this)(j, c));
  }
  void swap_cols(std::size_t i, std::size_t j) {
    for (std::size_t r = 0; r < rows_; ++r)
      std::swap((*this)(r, i), (*this)(r, j));
  }
  /// row[dst] += k * row[src]
  void add_row(std::size_t dst, std::size_t src, std::int64_t k) {
    for (std::size_t c = 0; c < cols_; ++c)
      (*this)(dst, c) =
          checked::add((*this)(dst, c), checked::mul(k, (*this)(src, c)));
  }
  /// col[dst] += k * col[src]
  void add_col(std::size_t dst, std::size_t src, std::int64_t k) {
    for (std::size_t r = 0; r < rows_; ++r)
      (*this)(r, dst) =
          checked::add((*this)(r, dst), checked::mul(k, (*this)(r, src)));
  }
  void negate_row(std::size_t i) {
    for (std::size_t c = 0; c < cols_; ++c)
      (*this)(i, c) = checked::sub(0, (*this)(i, c));
  }

  [[nodiscard]] std::string str() const {
    std::string s = "[";
    for (std::size_t i = 0; i < rows_; ++i) {
      s += i ? ", [" : "[";
      for (std::size_t j = 0; j < cols_; ++j)
        s += (j ? ", " : "") + std::to_string((*this)(i, j));
      s += "]";
    }
    return s + "]";
  }

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::int64_t> a_;
};

/// Exact determinant by fraction-free (Bareiss) elimination.
inline std::int64_t determinant(IntMatrix m) {
  if (m.rows() != m.cols())
    throw ParamOutOfRange("determinant of non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0)
    return 1;
  std::int64_t sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && m(p, k) == 0)
        ++p;
      if (p == n)
        return 0;
      m.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        m(i, j) = checked::sub(checked::mul(m(i, j), m(k, k)),
                               checked::mul(m(i, k), m(k, j))) /
                  prev;
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

using BigInt = boost::multiprecision::cpp_int;

/// Arbitrary-precision matrix, used for transformation certificates whose
/// entries can outgrow 64 bits even when the input and the divisors do not.
class BigMatrix {
public:
  BigMatrix() = default;
  BigMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), a_(rows * cols) {}
  explicit BigMatrix(const IntMatrix &m) : BigMatrix(m.rows(), m.cols()) {
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        (*this)(i, j) = m(i, j);
  }

  static BigMatrix identity(std::size_t n) {
    BigMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      m(i, i) = 1;
    return m;
  }

  [[nodiscard]] std::size_t rows() const { return rows_; }
  [[nodiscard]] std::size_t cols() const { return cols_; }
  BigInt &operator()(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
  const BigInt &operator()(std::size_t r, std::size_t c) const {
    return a_[r * cols_ + c];
  }

  [[nodiscard]] BigMatrix transpose() const {
    BigMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        t(j, i) = (*this)(i, j);
    return t;
  }

  friend BigMatrix operator*(const BigMatrix &x, const BigMatrix &y) {
    if (x.cols_ != y.rows_)
      throw ParamOutOfRange("matrix shape mismatch in product");
    BigMatrix r(x.rows_, y.cols_);
    for (std::size_t i = 0; i < x.rows_; ++i)
      for (std::size_t k = 0; k < x.cols_; ++k)
        if (x(i, k) != 0)
          for (std::size_t j = 0; j < y.cols_; ++j)
            r(i, j) += x(i, k) * y(k, j);
    return r;
  }

  friend bool operator==(const BigMatrix &, const BigMatrix &) = default;

  void swap_rows(std::size_t i, std::size_t j) {
    for (std::size_t c = 0; c < cols_; ++c)
      std::swap((*this)(i, c), (*this)(j, c));
  }
  /// row[dst] += k * row[src]
  void add_row(std::size_t dst, std::size_t src, const BigInt &k) {
    for (std::size_t c = 0; c < cols_; ++c)
      (*this)(dst, c) += k * (*this)(src, c);
  }
  void negate_row(std::size_t i) {
    for (std::size_t c = 0; c < cols_; ++c)
      (*this)(i, c) = -(*this)(i, c);
  }
  /// (row i, row j) <- (a ri + b rj, c ri + d rj)
  void mix_rows(std::size_t i, std::size_t j, const BigInt &a, const BigInt &b,
                const BigInt &c, const BigInt &d) {
    for (std::size_t k = 0; k < cols_; ++k) {
      BigInt u = (*this)(i, k), v = (*this)(j, k);
      (*this)(i, k) = a * u + b * v;
      (*this)(j, k) = c * u + d * v;
    }
  }

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<BigInt> a_;
};

inline std::int64_t to_int64(const BigInt &v) {
  if (v > std::numeric_limits<std::int64_t>::max() ||
      v < std::numeric_limits<std::int64_t>::min())
    throw Overflow("value does not fit in 64 bits");
  return v.convert_to<std::int64_t>();
}

struct SnfResult {
  IntMatrix D;  // diagonal, d1 | d2 | ..., non-negative
  BigMatrix U;  // rows x rows, unimodular
  BigMatrix V;  // cols x cols, unimodular
  /// The min(rows, cols) diagonal entries.
  std::vector<std::int64_t> divisors;
};

namespace detail {

struct Bezout {
  BigInt g, x, y; // x a + y b = g > 0
};

inline Bezout ext_gcd(const BigInt &a, const BigInt &b) {
  BigInt r0 = a, r1 = b, x0 = 1, x1 = 0, y0 = 0, y1 = 1;
  while (r1 != 0) {
    BigInt q = r0 / r1;
    r0 -= q * r1;
    std::swap(r0, r1);
    x0 -= q * x1;
    std::swap(x0, x1);
    y0 -= q * y1;
    std::swap(y0, y1);
  }
  if (r0 < 0)
    return {-r0, -x0, -y0};
  return {r0, x0, y0};
}

/// Zeroes A(i, t) for i > t with Bezout row transforms, mirrored on U.
inline void clear_below(BigMatrix &A, BigMatrix &U, std::size_t t) {
  for (std::size_t i = t + 1; i < A.rows(); ++i) {
    if (A(i, t) == 0)
      continue;
    BigInt a = A(t, t), b = A(i, t);
    if (b % a == 0) {
      BigInt q = -(b / a);
      A.add_row(i, t, q);
      U.add_row(i, t, q);
      continue;
    }
    auto z = ext_gcd(a, b);
    BigInt c = -(b / z.g), d = a / z.g;
    A.mix_rows(t, i, z.x, z.y, c, d);
    U.mix_rows(t, i, z.x, z.y, c, d);
  }
}

} // namespace detail

/// Smith normal form with certificate U * M * V = D. Column operations run as
/// row operations on the transpose.
inline SnfResult smith_normal_form(const IntMatrix &M) {
  const std::size_t R = M.rows(), C = M.cols();
  BigMatrix A(M);
  BigMatrix U = BigMatrix::identity(R);
  BigMatrix Vt = BigMatrix::identity(C);
  const std::size_t n = std::min(R, C);

  for (std::size_t t = 0; t < n; ++t) {
    std::size_t pr = R, pc = C;
    BigInt best = 0;
    for (std::size_t i = t; i < R; ++i)
      for (std::size_t j = t; j < C; ++j) {
        BigInt v = abs(A(i, j));
        if (v != 0 && (best == 0 || v < best)) {
          best = v;
          pr = i;
          pc = j;
        }
      }
    if (best == 0)
      break;
    if (pr != t) {
      A.swap_rows(pr, t);
      U.swap_rows(pr, t);
    }
    if (pc != t) {
      A = A.transpose();
      A.swap_rows(pc, t);
      A = A.transpose();
      Vt.swap_rows(pc, t);
    }
    for (;;) {
      detail::clear_below(A, U, t);
      bool row_clean = true;
      for (std::size_t j = t + 1; j < C; ++j)
        if (A(t, j) != 0)
          row_clean = false;
      if (!row_clean) {
        BigMatrix At = A.transpose();
        detail::clear_below(At, Vt, t);
        A = At.transpose();
        continue; // the column may have refilled
      }
      bool divides = true;
      for (std::size_t i = t + 1; i < R && divides; ++i)
        for (std::size_t j = t + 1; j < C; ++j)
          if (A(i, j) % A(t, t) != 0) {
            A.add_row(t, i, 1);
            U.add_row(t, i, 1);
            divides = false;
            break;
          }
      if (divides)
        break;
    }
    if (A(t, t) < 0) {
      A.negate_row(t);
      U.negate_row(t);
    }
  }
  SnfResult r{IntMatrix(R, C), U, Vt.transpose(), {}};
  for (std::size_t i = 0; i < n; ++i) {
    r.D(i, i) = to_int64(A(i, i));
    r.divisors.push_back(r.D(i, i));
  }
  return r;
}

/// Abelian group Z^rank + sum Z/torsion[i], torsion entries > 1 in divisor
/// order.
struct AbelianInvariants {
  std::int64_t rank = 0;
  std::vector<std::int64_t> torsion;

  [[nodiscard]] bool trivial() const { return rank == 0 && torsion.empty(); }
  /// Order when finite.
  [[nodiscard]] std::int64_t order() const {
    std::int64_t o = 1;
    for (auto d : torsion)
      o = checked::mul(o, d);
    return rank == 0 ? o : 0;
  }
  friend bool operator==(const AbelianInvariants &,
                         const AbelianInvariants &) = default;
};

inline std::string to_string(const AbelianInvariants &a) {
  std::string s;
  for (auto d : a.torsion)
    s += (s.empty() ? "" : " + ") + ("Z" + std::to_string(d));
  if (a.rank)
    s += (s.empty() ? "" : " + ") + std::string("Z^") + std::to_string(a.rank);
  return s.empty() ? "1" : s;
}

/// Cokernel of the relation matrix whose rows are relations over `gens`
/// columns.
inline AbelianInvariants cokernel(const IntMatrix &relations) {
  AbelianInvariants a;
  auto snf = smith_normal_form(relations);
  std::int64_t nonzero = 0;
  for (auto d : snf.divisors) {
    if (d != 0)
      ++nonzero;
    if (d > 1)
      a.torsion.push_back(d);
  }
  a.rank = static_cast<std::int64_t>(relations.cols()) - nonzero;
  return a;
}

} // namespace geo4
