#pragma once

#include <cstdint>
#include <numeric>
#include <vector>

#include "geo4/matrix.hpp"

namespace oracle {

/// Invariant factors from determinantal divisors: d_k is the gcd of all k x k
/// minors, and the k-th invariant factor is d_k / d_{k-1}.
inline std::vector<std::int64_t> invariant_factors(const geo4::IntMatrix &M) {
  const std::size_t R = M.rows(), C = M.cols(), n = std::min(R, C);
  std::vector<std::int64_t> d(n + 1, 0);
  d[0] = 1;
  std::vector<std::size_t> rows, cols;
  for (std::size_t k = 1; k <= n; ++k) {
    std::int64_t g = 0;
    std::vector<bool> rsel(R, false), csel(C, false);
    std::fill(rsel.begin(), rsel.begin() + static_cast<std::ptrdiff_t>(k), true);
    do {
      std::fill(csel.begin(), csel.end(), false);
      std::fill(csel.begin(), csel.begin() + static_cast<std::ptrdiff_t>(k), true);
      do {
        geo4::IntMatrix sub(k, k);
        std::size_t i = 0;
        for (std::size_t r = 0; r < R; ++r) {
          if (!rsel[r])
            continue;
          std::size_t j = 0;
          for (std::size_t c = 0; c < C; ++c)
            if (csel[c])
              sub(i, j++) = M(r, c);
          ++i;
        }
        g = std::gcd(g, geo4::determinant(sub));
      } while (std::prev_permutation(csel.begin(), csel.end()));
    } while (std::prev_permutation(rsel.begin(), rsel.end()));
    d[k] = g;
  }
  std::vector<std::int64_t> f;
  for (std::size_t k = 1; k <= n; ++k)
    f.push_back(d[k] == 0 ? 0 : d[k] / d[k - 1]);
  return f;
}

/// Bareiss elimination in arbitrary precision.
inline geo4::BigInt big_determinant(geo4::BigMatrix m) {
  const std::size_t n = m.rows();
  if (n == 0)
    return 1;
  geo4::BigInt sign = 1, prev = 1;
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
        m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

inline bool unimodular(const geo4::BigMatrix &U) {
  auto det = big_determinant(U);
  return det == 1 || det == -1;
}

} // namespace oracle
