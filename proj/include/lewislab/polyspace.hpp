#pragma once

#include <utility>
#include <vector>

#include "int_mat.hpp"
#include "mat2.hpp"

namespace lewislab {

namespace detail {

// Coefficients of (x*z + y)^k, ascending powers.
inline std::vector<std::vector<mpz_class>> linear_powers(const mpz_class& x,
                                                         const mpz_class& y, int n) {
  std::vector<std::vector<mpz_class>> pw(n + 1);
  pw[0] = {mpz_class(1)};
  for (int k = 1; k <= n; ++k) {
    pw[k].assign(k + 1, mpz_class(0));
    for (int j = 0; j < k; ++j) {
      pw[k][j] += y * pw[k - 1][j];
      pw[k][j + 1] += x * pw[k - 1][j];
    }
  }
  return pw;
}

} // namespace detail

// Matrix of phi |-> (c z + d)^n phi((a z + b)/(c z + d)) on P_n in the
// monomial basis: column k holds the coefficients of (a z+b)^k (c z+d)^(n-k).
// Substitution based, so any nonzero determinant is accepted (the z |-> -z/(z+1)
// extension map has det -1).
inline LinMap compile_slash(const Mat2& m, int n) {
  if (m.det() == 0) throw std::invalid_argument("compile_slash: singular matrix");
  if (n < 0) throw std::invalid_argument("compile_slash: negative degree");
  auto top = detail::linear_powers(m.a, m.b, n);
  auto bot = detail::linear_powers(m.c, m.d, n);
  LinMap out(n + 1, n + 1);
  for (int k = 0; k <= n; ++k) {
    const auto& p = top[k];
    const auto& q = bot[n - k];
    for (size_t i = 0; i < p.size(); ++i) {
      if (p[i] == 0) continue;
      for (size_t j = 0; j < q.size(); ++j) {
        if (q[j] == 0) continue;
        out.at(i + j, k) += p[i] * q[j];
      }
    }
  }
  return out;
}

// Matrix of phi(z) |-> phi(z + h) on P_n: entry (j,k) = C(k,j) h^(k-j).
inline LinMap shift_map(int n, long h) {
  LinMap out(n + 1, n + 1);
  std::vector<std::vector<mpz_class>> binom(n + 1);
  for (int k = 0; k <= n; ++k) {
    binom[k].assign(k + 1, mpz_class(0));
    binom[k][0] = 1;
    binom[k][k] = 1;
    for (int j = 1; j < k; ++j) binom[k][j] = binom[k - 1][j - 1] + binom[k - 1][j];
  }
  mpz_class hz(h);
  for (int k = 0; k <= n; ++k) {
    mpz_class hp(1);
    for (int j = k; j >= 0; --j) {
      out.at(j, k) = binom[k][j] * hp;
      hp *= hz;
    }
  }
  return out;
}

// Monomial index lists of the even and odd subspaces of P_n.
inline std::pair<std::vector<int>, std::vector<int>> parity_split(int n) {
  std::vector<int> even, odd;
  for (int i = 0; i <= n; ++i) (i % 2 == 0 ? even : odd).push_back(i);
  return {even, odd};
}

} // namespace lewislab
