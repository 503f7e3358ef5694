#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "mat2.hpp"

namespace lewislab {

enum class Family { principal, hecke };

inline const char* family_name(Family f) {
  return f == Family::principal ? "gamma" : "gamma0";
}

// Which modular group: Gamma(N) (principal) or Gamma_0(N) (hecke), N >= 2.
struct GroupSpec {
  Family family = Family::principal;
  int level = 2;

  bool operator==(const GroupSpec& o) const {
    return family == o.family && level == o.level;
  }
};

inline GroupSpec principal_group(int n) { return GroupSpec{Family::principal, n}; }
inline GroupSpec hecke_group(int n) { return GroupSpec{Family::hecke, n}; }

inline void require_level(int level) {
  if (level < 2) throw std::invalid_argument("group level must be >= 2");
}

// Element of PSL(2,Z/NZ), stored in a canonical form: entries reduced to
// [0,N) and the representative chosen as the lexicographic minimum of
// (a,b,c,d) and its negation. This puts the first nonzero entry into
// {1,...,floor(N/2)} whenever the two representatives differ there, and
// breaks the a = N-a tie deterministically.
struct ProjMat {
  std::array<uint32_t, 4> e{1, 0, 0, 1};
  int level = 2;

  bool operator==(const ProjMat& o) const { return level == o.level && e == o.e; }
  bool operator<(const ProjMat& o) const { return e < o.e; }
};

namespace detail {

inline std::array<uint32_t, 4> canonical_tuple(std::array<uint32_t, 4> v, uint32_t n) {
  std::array<uint32_t, 4> w;
  for (int i = 0; i < 4; ++i) w[i] = v[i] == 0 ? 0 : n - v[i];
  return std::min(v, w);
}

inline uint32_t mod_to_uint(const mpz_class& x, uint32_t n) {
  return static_cast<uint32_t>(mpz_fdiv_ui(x.get_mpz_t(), n));
}

} // namespace detail

// Reduction mod N of an integer matrix with det = 1, projectively identified.
inline ProjMat proj_reduce(const Mat2& m, int level) {
  require_level(level);
  if (m.det() != 1) throw std::invalid_argument("proj_reduce: matrix must have det 1");
  uint32_t n = static_cast<uint32_t>(level);
  std::array<uint32_t, 4> v{detail::mod_to_uint(m.a, n), detail::mod_to_uint(m.b, n),
                            detail::mod_to_uint(m.c, n), detail::mod_to_uint(m.d, n)};
  return ProjMat{detail::canonical_tuple(v, n), level};
}

inline ProjMat proj_mul(const ProjMat& x, const ProjMat& y) {
  uint64_t n = static_cast<uint64_t>(x.level);
  const auto& a = x.e;
  const auto& b = y.e;
  std::array<uint32_t, 4> v{
      static_cast<uint32_t>((uint64_t(a[0]) * b[0] + uint64_t(a[1]) * b[2]) % n),
      static_cast<uint32_t>((uint64_t(a[0]) * b[1] + uint64_t(a[1]) * b[3]) % n),
      static_cast<uint32_t>((uint64_t(a[2]) * b[0] + uint64_t(a[3]) * b[2]) % n),
      static_cast<uint32_t>((uint64_t(a[2]) * b[1] + uint64_t(a[3]) * b[3]) % n)};
  return ProjMat{detail::canonical_tuple(v, static_cast<uint32_t>(n)), x.level};
}

inline ProjMat proj_identity(int level) {
  require_level(level);
  return proj_reduce(Mat2::identity(), level);
}

// Closure of {Q mod N, T mod N} under multiplication, breadth first starting
// from the identity. The discovery order is the canonical element order used
// by the principal coset table.
inline std::vector<ProjMat> enumerate_psl2zn(int level) {
  require_level(level);
  ProjMat q = proj_reduce(Mat2::gen_Q(), level);
  ProjMat t = proj_reduce(Mat2::gen_T(), level);
  std::vector<ProjMat> elems{proj_identity(level)};
  std::map<std::array<uint32_t, 4>, size_t> index{{elems[0].e, 0}};
  for (size_t i = 0; i < elems.size(); ++i) {
    for (const ProjMat* g : {&q, &t}) {
      ProjMat next = proj_mul(elems[i], *g);
      if (index.emplace(next.e, elems.size()).second) elems.push_back(next);
    }
  }
  return elems;
}

// |Gamma(1) : Gamma| by the closed formulas.
inline long long group_index(const GroupSpec& spec) {
  require_level(spec.level);
  long long n = spec.level;
  // distinct prime divisors
  std::vector<long long> primes;
  long long m = n;
  for (long long p = 2; p * p <= m; ++p) {
    if (m % p == 0) {
      primes.push_back(p);
      while (m % p == 0) m /= p;
    }
  }
  if (m > 1) primes.push_back(m);

  if (spec.family == Family::principal) {
    if (n == 2) return 6;
    long long idx = n * n * n;
    for (long long p : primes) idx = idx / (p * p) * (p * p - 1);
    return idx / 2;
  }
  long long idx = n;
  for (long long p : primes) idx = idx / p * (p + 1);
  return idx;
}

// Ordered right cosets of Gamma in Gamma(1), together with the permutations
// induced by right multiplication with Q and T. perm[i] is the index of the
// coset of (representative of coset i) * generator.
struct CosetTable {
  GroupSpec group;
  size_t size = 0;
  std::vector<ProjMat> labels;
  std::vector<size_t> perm_Q;
  std::vector<size_t> perm_T;
};

namespace detail {

// The image of Gamma_0(N) in PSL(2,Z/NZ): upper triangular [[a,b],[0,a^-1]].
inline std::vector<ProjMat> theta_group(int level) {
  uint32_t n = static_cast<uint32_t>(level);
  std::vector<ProjMat> out;
  std::vector<ProjMat> seen;
  for (uint32_t a = 1; a < n; ++a) {
    if (std::gcd(a, n) != 1u) continue;
    uint32_t ainv = 0;
    for (uint32_t x = 1; x < n; ++x)
      if ((uint64_t(a) * x) % n == 1u) { ainv = x; break; }
    for (uint32_t b = 0; b < n; ++b) {
      ProjMat m{canonical_tuple({a, b, 0, ainv}, n), level};
      if (std::find(out.begin(), out.end(), m) == out.end()) out.push_back(m);
    }
  }
  return out;
}

// Canonical key of the coset Theta(N) * g: lex-min canonical form over the orbit.
inline std::array<uint32_t, 4> theta_orbit_key(const std::vector<ProjMat>& theta,
                                               const ProjMat& g) {
  std::array<uint32_t, 4> best = g.e;
  for (const ProjMat& th : theta) {
    ProjMat x = proj_mul(th, g);
    if (x.e < best) best = x.e;
  }
  return best;
}

} // namespace detail

inline CosetTable coset_table(const GroupSpec& spec) {
  require_level(spec.level);
  std::vector<ProjMat> elems = enumerate_psl2zn(spec.level);
  ProjMat q = proj_reduce(Mat2::gen_Q(), spec.level);
  ProjMat t = proj_reduce(Mat2::gen_T(), spec.level);

  CosetTable table;
  table.group = spec;

  if (spec.family == Family::principal) {
    // Gamma(N) is the kernel of reduction mod N, so the cosets are the group
    // elements themselves (regular representation).
    std::map<std::array<uint32_t, 4>, size_t> index;
    for (size_t i = 0; i < elems.size(); ++i) index.emplace(elems[i].e, i);
    table.size = elems.size();
    table.labels = elems;
    table.perm_Q.resize(table.size);
    table.perm_T.resize(table.size);
    for (size_t i = 0; i < elems.size(); ++i) {
      table.perm_Q[i] = index.at(proj_mul(elems[i], q).e);
      table.perm_T[i] = index.at(proj_mul(elems[i], t).e);
    }
    return table;
  }

  // Hecke case: cosets are Theta(N)\PSL(2,Z/NZ) orbits, canonicalized by
  // left multiplication over all of Theta(N). Works for composite N too.
  std::vector<ProjMat> theta = detail::theta_group(spec.level);
  std::map<std::array<uint32_t, 4>, size_t> elem_index;
  for (size_t i = 0; i < elems.size(); ++i) elem_index.emplace(elems[i].e, i);
  std::vector<size_t> coset_of(elems.size());
  std::map<std::array<uint32_t, 4>, size_t> orbit_index;
  for (size_t i = 0; i < elems.size(); ++i) {
    auto key = detail::theta_orbit_key(theta, elems[i]);
    auto [it, inserted] = orbit_index.emplace(key, table.labels.size());
    if (inserted) table.labels.push_back(ProjMat{key, spec.level});
    coset_of[i] = it->second;
  }
  table.size = table.labels.size();
  table.perm_Q.resize(table.size);
  table.perm_T.resize(table.size);
  for (size_t c = 0; c < table.size; ++c) {
    const ProjMat& rep = table.labels[c];
    table.perm_Q[c] = coset_of[elem_index.at(proj_mul(rep, q).e)];
    table.perm_T[c] = coset_of[elem_index.at(proj_mul(rep, t).e)];
  }
  return table;
}

// Counts of elliptic classes, cusps and the genus of the modular surface.
struct SurfaceInvariants {
  long long index = 0;
  long long v2 = 0;
  long long v3 = 0;
  long long v_inf = 0;
  long long genus = 0;
};

namespace detail {

inline std::vector<long long> prime_divisors(long long n) {
  std::vector<long long> primes;
  for (long long p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      primes.push_back(p);
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) primes.push_back(n);
  return primes;
}

inline long long euler_phi(long long n) {
  long long r = n;
  for (long long p : prime_divisors(n)) r = r / p * (p - 1);
  return r;
}

// Residue symbols {-1/p} and {-3/p}, with value 0 at the ramified primes
// (p = 2 resp. p = 3) so that v2(Gamma_0(2)) = 1 and v3(Gamma_0(3)) = 1.
inline int residue_symbol_minus1(long long p) {
  if (p == 2) return 0;
  return p % 4 == 1 ? 1 : -1;
}

inline int residue_symbol_minus3(long long p) {
  if (p == 3) return 0;
  return p % 3 == 1 ? 1 : -1;
}

} // namespace detail

inline SurfaceInvariants surface_invariants(const GroupSpec& spec) {
  require_level(spec.level);
  SurfaceInvariants inv;
  inv.index = group_index(spec);
  long long n = spec.level;
  if (spec.family == Family::principal) {
    inv.v2 = 0;
    inv.v3 = 0;
    inv.v_inf = inv.index / n;
  } else {
    auto primes = detail::prime_divisors(n);
    if (n % 4 == 0) {
      inv.v2 = 0;
    } else {
      inv.v2 = 1;
      for (long long p : primes) inv.v2 *= 1 + detail::residue_symbol_minus1(p);
    }
    if (n % 9 == 0) {
      inv.v3 = 0;
    } else {
      inv.v3 = 1;
      for (long long p : primes) inv.v3 *= 1 + detail::residue_symbol_minus3(p);
    }
    inv.v_inf = 0;
    for (long long d = 1; d <= n; ++d)
      if (n % d == 0) inv.v_inf += detail::euler_phi(std::gcd(d, n / d));
  }
  // g = 1 + index/12 - v2/4 - v3/3 - v_inf/2, which must be a nonnegative integer.
  long long twelve_g = 12 + inv.index - 3 * inv.v2 - 4 * inv.v3 - 6 * inv.v_inf;
  if (twelve_g % 12 != 0 || twelve_g < 0)
    throw std::logic_error("surface_invariants: genus formula is not a nonnegative integer");
  inv.genus = twelve_g / 12;
  return inv;
}

} // namespace lewislab
