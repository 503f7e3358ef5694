#pragma once

#include <gmpxx.h>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace lewislab {

// Dense matrix with exact integer entries, row major.
struct IntMat {
  size_t rows = 0;
  size_t cols = 0;
  std::vector<mpz_class> e;

  IntMat() = default;
  IntMat(size_t r, size_t c) : rows(r), cols(c), e(r * c) {}

  mpz_class& at(size_t r, size_t c) { return e[r * cols + c]; }
  const mpz_class& at(size_t r, size_t c) const { return e[r * cols + c]; }

  static IntMat identity(size_t n) {
    IntMat m(n, n);
    for (size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  bool operator==(const IntMat& o) const {
    return rows == o.rows && cols == o.cols && e == o.e;
  }
  bool operator!=(const IntMat& o) const { return !(*this == o); }

  bool is_zero() const {
    for (const auto& x : e)
      if (x != 0) return false;
    return true;
  }
};

// Exact matrices of linear operators between polynomial spaces share the
// representation with assembled systems.
using LinMap = IntMat;

inline IntMat mat_mul(const IntMat& x, const IntMat& y) {
  if (x.cols != y.rows) throw std::invalid_argument("mat_mul: shape mismatch");
  IntMat r(x.rows, y.cols);
  mpz_class t;
  for (size_t i = 0; i < x.rows; ++i)
    for (size_t k = 0; k < x.cols; ++k) {
      const mpz_class& xik = x.at(i, k);
      if (xik == 0) continue;
      for (size_t j = 0; j < y.cols; ++j) {
        const mpz_class& ykj = y.at(k, j);
        if (ykj == 0) continue;
        t = xik * ykj;
        r.at(i, j) += t;
      }
    }
  return r;
}

inline IntMat mat_add(const IntMat& x, const IntMat& y) {
  if (x.rows != y.rows || x.cols != y.cols)
    throw std::invalid_argument("mat_add: shape mismatch");
  IntMat r = x;
  for (size_t i = 0; i < r.e.size(); ++i) r.e[i] += y.e[i];
  return r;
}

inline IntMat mat_scale(const IntMat& x, long s) {
  IntMat r = x;
  for (auto& v : r.e) v *= s;
  return r;
}

// M[r0.., c0..] += sign * b. Accumulates, since distinct terms of one
// functional equation can land on the same block.
inline void add_block(IntMat& m, size_t r0, size_t c0, const IntMat& b, long sign = 1) {
  if (r0 + b.rows > m.rows || c0 + b.cols > m.cols)
    throw std::invalid_argument("add_block: block out of range");
  for (size_t i = 0; i < b.rows; ++i)
    for (size_t j = 0; j < b.cols; ++j) {
      const mpz_class& v = b.at(i, j);
      if (v == 0) continue;
      if (sign == 1)
        m.at(r0 + i, c0 + j) += v;
      else if (sign == -1)
        m.at(r0 + i, c0 + j) -= v;
      else
        m.at(r0 + i, c0 + j) += sign * v;
    }
}

// Portable text format: first line "rows cols", then row-major integers,
// one row per line.
inline void dump_text(const IntMat& m, std::ostream& os) {
  os << m.rows << ' ' << m.cols << '\n';
  for (size_t i = 0; i < m.rows; ++i) {
    for (size_t j = 0; j < m.cols; ++j) {
      if (j) os << ' ';
      os << m.at(i, j);
    }
    os << '\n';
  }
}

inline IntMat parse_text(std::istream& is) {
  size_t r = 0, c = 0;
  if (!(is >> r >> c)) throw std::runtime_error("parse_text: bad header");
  IntMat m(r, c);
  std::string tok;
  for (size_t i = 0; i < r * c; ++i) {
    if (!(is >> tok)) throw std::runtime_error("parse_text: truncated matrix");
    m.e[i] = mpz_class(tok);
  }
  return m;
}

} // namespace lewislab
