#pragma once

#include <random>
#include <stdexcept>
#include <vector>

#include "int_mat.hpp"
#include "psl2.hpp"

namespace lewislab {

// Permutation of {0,...,mu-1} as an image table, read as the 0/1 matrix with
// entry (i, p[i]) = 1. With this convention chi(uv) = chi(u) * chi(v) and
// (chi(g) f)_i = f_{sigma_g(i)}, matching the right action on cosets.
struct PermMatrix {
  std::vector<size_t> img;

  size_t size() const { return img.size(); }

  bool operator==(const PermMatrix& o) const { return img == o.img; }

  bool is_identity() const {
    for (size_t i = 0; i < img.size(); ++i)
      if (img[i] != i) return false;
    return true;
  }
};

inline PermMatrix perm_identity(size_t n) {
  PermMatrix p;
  p.img.resize(n);
  for (size_t i = 0; i < n; ++i) p.img[i] = i;
  return p;
}

inline bool is_bijection(const PermMatrix& p) {
  std::vector<char> hit(p.img.size(), 0);
  for (size_t v : p.img) {
    if (v >= p.img.size() || hit[v]) return false;
    hit[v] = 1;
  }
  return true;
}

// Matrix-product composition: (xy)(i) = y(x(i)).
inline PermMatrix perm_compose(const PermMatrix& x, const PermMatrix& y) {
  if (x.size() != y.size()) throw std::invalid_argument("perm_compose: size mismatch");
  PermMatrix r;
  r.img.resize(x.size());
  for (size_t i = 0; i < x.size(); ++i) r.img[i] = y.img[x.img[i]];
  return r;
}

inline PermMatrix perm_inverse(const PermMatrix& x) {
  PermMatrix r;
  r.img.resize(x.size());
  for (size_t i = 0; i < x.size(); ++i) r.img[x.img[i]] = i;
  return r;
}

inline IntMat perm_to_dense(const PermMatrix& p) {
  IntMat m(p.size(), p.size());
  for (size_t i = 0; i < p.size(); ++i) m.at(i, p.img[i]) = 1;
  return m;
}

enum class Gen { Q, T, Tinv };

// Word in the generators, read left to right as a product in Gamma(1).
using GeneratorWord = std::vector<Gen>;

inline Mat2 word_to_mat(const GeneratorWord& w) {
  Mat2 m = Mat2::identity();
  for (Gen g : w) {
    switch (g) {
      case Gen::Q: m = mat_mul(m, Mat2::gen_Q()); break;
      case Gen::T: m = mat_mul(m, Mat2::gen_T()); break;
      case Gen::Tinv: m = mat_mul(m, Mat2::gen_T_inv()); break;
    }
  }
  return m;
}

// chi^Gamma evaluated on a word: the permutation of the right coset action.
// T^-1 is realized as the inverse of perm_T, independent of the level.
inline PermMatrix chi_of_word(const CosetTable& table, const GeneratorWord& w) {
  PermMatrix q{std::vector<size_t>(table.perm_Q)};
  PermMatrix t{std::vector<size_t>(table.perm_T)};
  PermMatrix tinv = perm_inverse(t);
  PermMatrix r = perm_identity(table.size);
  for (Gen g : w) {
    switch (g) {
      case Gen::Q: r = perm_compose(r, q); break;
      case Gen::T: r = perm_compose(r, t); break;
      case Gen::Tinv: r = perm_compose(r, tinv); break;
    }
  }
  return r;
}

namespace detail {

inline GeneratorWord random_word(std::mt19937_64& rng, size_t max_len) {
  std::uniform_int_distribution<size_t> len_dist(0, max_len);
  std::uniform_int_distribution<int> gen_dist(0, 2);
  GeneratorWord w(len_dist(rng));
  for (Gen& g : w) g = static_cast<Gen>(gen_dist(rng));
  return w;
}

} // namespace detail

// Checks the defining relations Q^2 = (QT)^3 = I on the table and
// multiplicativity chi(uv) = chi(u) chi(v) on random word pairs.
inline bool verify_relations(const CosetTable& table, uint64_t seed = 0x1e5715u) {
  PermMatrix q{std::vector<size_t>(table.perm_Q)};
  PermMatrix t{std::vector<size_t>(table.perm_T)};
  if (!is_bijection(q) || !is_bijection(t)) return false;
  if (!perm_compose(q, q).is_identity()) return false;
  PermMatrix qt = perm_compose(q, t);
  if (!perm_compose(perm_compose(qt, qt), qt).is_identity()) return false;
  std::mt19937_64 rng(seed);
  for (int trial = 0; trial < 50; ++trial) {
    GeneratorWord u = detail::random_word(rng, 12);
    GeneratorWord v = detail::random_word(rng, 12);
    GeneratorWord uv = u;
    uv.insert(uv.end(), v.begin(), v.end());
    if (!(chi_of_word(table, uv) == perm_compose(chi_of_word(table, u), chi_of_word(table, v))))
      return false;
  }
  return true;
}

// Table with cosets relabeled by rho: new coset i is old coset rho(i).
inline CosetTable relabel(const CosetTable& table, const std::vector<size_t>& rho) {
  if (rho.size() != table.size) throw std::invalid_argument("relabel: size mismatch");
  std::vector<size_t> rho_inv(rho.size());
  for (size_t i = 0; i < rho.size(); ++i) rho_inv[rho[i]] = i;
  CosetTable out;
  out.group = table.group;
  out.size = table.size;
  out.labels.resize(table.size);
  out.perm_Q.resize(table.size);
  out.perm_T.resize(table.size);
  for (size_t i = 0; i < table.size; ++i) {
    out.labels[i] = table.labels[rho[i]];
    out.perm_Q[i] = rho_inv[table.perm_Q[rho[i]]];
    out.perm_T[i] = rho_inv[table.perm_T[rho[i]]];
  }
  return out;
}

} // namespace lewislab
