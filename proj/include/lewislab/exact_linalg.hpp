#pragma once

#include <array>
#include <chrono>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "int_mat.hpp"

namespace lewislab {

enum class RankMethod { exact, modular };
enum class RankStrategy { exact, modular, auto_pick };

struct RankResult {
  size_t rank = 0;
  RankMethod method = RankMethod::exact;
  std::vector<uint64_t> primes_used; // modular only
  double elapsed_ms = 0.0;
};

namespace detail {

inline double ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
      .count();
}

// ---- 64 bit Montgomery arithmetic, modulus odd and < 2^62 ----

struct Montgomery64 {
  uint64_t p;
  uint64_t p_neg_inv; // -p^{-1} mod 2^64
  uint64_t r2;        // (2^64)^2 mod p

  explicit Montgomery64(uint64_t modulus) : p(modulus) {
    uint64_t inv = p; // Newton iteration for p^{-1} mod 2^64
    for (int i = 0; i < 6; ++i) inv *= 2 - p * inv;
    p_neg_inv = ~inv + 1;
    uint64_t r1 = (0 - p) % p; // 2^64 mod p
    r2 = static_cast<uint64_t>((static_cast<__uint128_t>(r1) * r1) % p);
  }

  uint64_t redc(__uint128_t t) const {
    uint64_t m = static_cast<uint64_t>(t) * p_neg_inv;
    uint64_t r = static_cast<uint64_t>((t + static_cast<__uint128_t>(m) * p) >> 64);
    return r >= p ? r - p : r;
  }

  uint64_t to_mont(uint64_t x) const { return redc(static_cast<__uint128_t>(x) * r2); }
  uint64_t mul(uint64_t a, uint64_t b) const { return redc(static_cast<__uint128_t>(a) * b); }
  uint64_t sub(uint64_t a, uint64_t b) const { return a >= b ? a - b : a + p - b; }

  uint64_t pow(uint64_t base_mont, uint64_t exp) const {
    uint64_t acc = to_mont(1);
    while (exp) {
      if (exp & 1) acc = mul(acc, base_mont);
      base_mont = mul(base_mont, base_mont);
      exp >>= 1;
    }
    return acc;
  }

  uint64_t inv(uint64_t a_mont) const { return pow(a_mont, p - 2); }
};

inline uint64_t mulmod_u64(uint64_t a, uint64_t b, uint64_t m) {
  return static_cast<uint64_t>((static_cast<__uint128_t>(a) * b) % m);
}

inline uint64_t powmod_u64(uint64_t a, uint64_t e, uint64_t m) {
  uint64_t r = 1;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod_u64(r, a, m);
    a = mulmod_u64(a, a, m);
    e >>= 1;
  }
  return r;
}

// Deterministic Miller-Rabin, valid for all 64 bit inputs.
inline bool is_prime_u64(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    uint64_t x = powmod_u64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod_u64(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

} // namespace detail

inline constexpr uint64_t kPrimeLow = uint64_t(1) << 50;
inline constexpr uint64_t kPrimeHigh = uint64_t(1) << 62;
inline constexpr uint64_t kDefaultPrimeSeed = 0x13d9e2c4b7a65f01ull;

inline uint64_t random_prime_in_range(std::mt19937_64& rng) {
  std::uniform_int_distribution<uint64_t> dist(kPrimeLow + 1, kPrimeHigh - 1);
  for (;;) {
    uint64_t c = dist(rng) | 1;
    if (c > kPrimeLow && c < kPrimeHigh && detail::is_prime_u64(c)) return c;
  }
}

inline std::array<uint64_t, 3> draw_rank_primes(uint64_t seed = kDefaultPrimeSeed) {
  std::mt19937_64 rng(seed);
  std::array<uint64_t, 3> out{};
  for (int i = 0; i < 3; ++i) {
    uint64_t p;
    do {
      p = random_prime_in_range(rng);
    } while (i > 0 && (p == out[0] || (i > 1 && p == out[1])));
    out[i] = p;
  }
  return out;
}

// Rank of M mod p by Gaussian elimination over Z/pZ in Montgomery form.
inline size_t rank_mod_prime(const IntMat& m, uint64_t p) {
  detail::Montgomery64 mont(p);
  size_t rows = m.rows, cols = m.cols;
  std::vector<std::vector<uint64_t>> a(rows);
  for (size_t i = 0; i < rows; ++i) {
    a[i].resize(cols);
    for (size_t j = 0; j < cols; ++j) {
      uint64_t r = mpz_fdiv_ui(m.at(i, j).get_mpz_t(), p);
      a[i][j] = r ? mont.to_mont(r) : 0;
    }
  }
  size_t rank = 0;
  for (size_t col = 0; col < cols && rank < rows; ++col) {
    size_t piv = rank;
    while (piv < rows && a[piv][col] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[rank], a[piv]);
    uint64_t inv = mont.inv(a[rank][col]);
    const uint64_t* prow = a[rank].data();
    for (size_t r = rank + 1; r < rows; ++r) {
      uint64_t head = a[r][col];
      if (head == 0) continue;
      uint64_t f = mont.mul(head, inv);
      uint64_t* row = a[r].data();
      for (size_t c = col; c < cols; ++c)
        row[c] = mont.sub(row[c], mont.mul(f, prow[c]));
    }
    ++rank;
  }
  return rank;
}

// Fraction-free (Bareiss) elimination with full pivoting; the pivot is the
// remaining entry of minimal nonzero magnitude. Exact over Q.
inline RankResult rank_exact(const IntMat& m) {
  auto t0 = std::chrono::steady_clock::now();
  size_t rows = m.rows, cols = m.cols;
  std::vector<std::vector<mpz_class>> a(rows);
  for (size_t i = 0; i < rows; ++i) {
    a[i].resize(cols);
    for (size_t j = 0; j < cols; ++j) a[i][j] = m.at(i, j);
  }
  mpz_class prev(1), t, u;
  size_t k = 0;
  size_t steps = std::min(rows, cols);
  while (k < steps) {
    size_t pr = rows, pc = cols;
    for (size_t i = k; i < rows; ++i)
      for (size_t j = k; j < cols; ++j) {
        const mpz_class& v = a[i][j];
        if (v == 0) continue;
        if (pr == rows || mpz_cmpabs(v.get_mpz_t(), a[pr][pc].get_mpz_t()) < 0) {
          pr = i;
          pc = j;
        }
      }
    if (pr == rows) break; // remaining submatrix is zero
    std::swap(a[k], a[pr]);
    if (pc != k)
      for (size_t i = 0; i < rows; ++i) std::swap(a[i][k], a[i][pc]);
    const mpz_class& pivot = a[k][k];
    for (size_t i = k + 1; i < rows; ++i) {
      const mpz_class& lead = a[i][k];
      if (lead == 0) {
        for (size_t j = k + 1; j < cols; ++j) {
          mpz_class& x = a[i][j];
          if (x == 0) continue;
          t = pivot * x;
          mpz_divexact(x.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        }
      } else {
        for (size_t j = k + 1; j < cols; ++j) {
          t = pivot * a[i][j];
          u = lead * a[k][j];
          t -= u;
          if (t == 0)
            a[i][j] = 0;
          else
            mpz_divexact(a[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        }
        a[i][k] = 0;
      }
    }
    prev = a[k][k];
    ++k;
  }
  RankResult r;
  r.rank = k;
  r.method = RankMethod::exact;
  r.elapsed_ms = detail::ms_since(t0);
  return r;
}

// Rank mod three independently drawn random primes in (2^50, 2^62). If the
// three agree that rank is returned; a disagreement escalates to rank_exact.
inline RankResult rank_modular_with_primes(const IntMat& m, const std::array<uint64_t, 3>& primes) {
  auto t0 = std::chrono::steady_clock::now();
  std::array<size_t, 3> ranks{};
  for (int i = 0; i < 3; ++i) ranks[i] = rank_mod_prime(m, primes[i]);
  if (ranks[0] == ranks[1] && ranks[1] == ranks[2]) {
    RankResult r;
    r.rank = ranks[0];
    r.method = RankMethod::modular;
    r.primes_used.assign(primes.begin(), primes.end());
    r.elapsed_ms = detail::ms_since(t0);
    return r;
  }
  RankResult r = rank_exact(m);
  r.elapsed_ms = detail::ms_since(t0);
  return r;
}

inline RankResult rank_modular(const IntMat& m, uint64_t seed = kDefaultPrimeSeed) {
  return rank_modular_with_primes(m, draw_rank_primes(seed));
}

inline RankResult compute_rank(const IntMat& m, RankStrategy strategy) {
  switch (strategy) {
    case RankStrategy::exact: return rank_exact(m);
    case RankStrategy::modular: return rank_modular(m);
    case RankStrategy::auto_pick:
    default:
      // dimension-only queries take the fast path; escalation keeps it exact
      return rank_modular(m);
  }
}

// Basis of {v : Mv = 0} over Q via Gauss-Jordan on rational entries.
// Exact; pivots are the first nonzero entry in each column.
inline std::vector<std::vector<mpq_class>> nullspace_basis(const IntMat& m) {
  size_t rows = m.rows, cols = m.cols;
  std::vector<std::vector<mpq_class>> a(rows, std::vector<mpq_class>(cols));
  for (size_t i = 0; i < rows; ++i)
    for (size_t j = 0; j < cols; ++j) a[i][j] = mpq_class(m.at(i, j));

  std::vector<size_t> pivot_col;
  size_t r = 0;
  for (size_t col = 0; col < cols && r < rows; ++col) {
    size_t piv = r;
    while (piv < rows && a[piv][col] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[r], a[piv]);
    mpq_class inv = 1 / a[r][col];
    for (size_t j = col; j < cols; ++j) a[r][j] *= inv;
    for (size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][col] == 0) continue;
      mpq_class f = a[i][col];
      for (size_t j = col; j < cols; ++j) a[i][j] -= f * a[r][j];
    }
    pivot_col.push_back(col);
    ++r;
  }

  std::vector<char> is_pivot(cols, 0);
  for (size_t c : pivot_col) is_pivot[c] = 1;
  std::vector<std::vector<mpq_class>> basis;
  for (size_t freec = 0; freec < cols; ++freec) {
    if (is_pivot[freec]) continue;
    std::vector<mpq_class> v(cols, mpq_class(0));
    v[freec] = 1;
    for (size_t i = 0; i < pivot_col.size(); ++i) v[pivot_col[i]] = -a[i][freec];
    basis.push_back(std::move(v));
  }
  return basis;
}

inline std::vector<mpq_class> apply_mat(const IntMat& m, const std::vector<mpq_class>& v) {
  if (v.size() != m.cols) throw std::invalid_argument("apply_mat: size mismatch");
  std::vector<mpq_class> out(m.rows, mpq_class(0));
  for (size_t i = 0; i < m.rows; ++i)
    for (size_t j = 0; j < m.cols; ++j) {
      if (m.at(i, j) == 0 || v[j] == 0) continue;
      out[i] += mpq_class(m.at(i, j)) * v[j];
    }
  return out;
}

// Stack rational vectors as rows of an integer matrix, clearing denominators
// row by row. Used to measure the dimension of a span.
inline IntMat from_rational_rows(const std::vector<std::vector<mpq_class>>& rows) {
  if (rows.empty()) return IntMat(0, 0);
  IntMat m(rows.size(), rows[0].size());
  for (size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != m.cols) throw std::invalid_argument("from_rational_rows: ragged rows");
    mpz_class den(1);
    for (const auto& q : rows[i]) den = lcm(den, mpz_class(q.get_den()));
    for (size_t j = 0; j < m.cols; ++j) {
      mpq_class scaled = rows[i][j] * mpq_class(den);
      m.at(i, j) = mpz_class(scaled.get_num());
    }
  }
  return m;
}

} // namespace lewislab
