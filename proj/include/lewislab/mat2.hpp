#pragma once

#include <gmpxx.h>
#include <ostream>
#include <stdexcept>

namespace lewislab {

// 2x2 integer matrix. Group elements have det = 1; the slash compiler in
// polyspace.hpp also accepts det = -1 substitutions, so determinant is not
// enforced here.
struct Mat2 {
  mpz_class a, b, c, d;

  Mat2() : a(1), b(0), c(0), d(1) {}
  Mat2(mpz_class a_, mpz_class b_, mpz_class c_, mpz_class d_)
      : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)), d(std::move(d_)) {}

  static Mat2 identity() { return Mat2(1, 0, 0, 1); }
  // Generators of PSL(2,Z): Q of order 2, T the unit translation.
  static Mat2 gen_Q() { return Mat2(0, 1, -1, 0); }
  static Mat2 gen_T() { return Mat2(1, 1, 0, 1); }
  static Mat2 gen_T_inv() { return Mat2(1, -1, 0, 1); }

  mpz_class det() const { return a * d - b * c; }

  Mat2 neg() const { return Mat2(-a, -b, -c, -d); }

  // Inverse of a det=+-1 matrix.
  Mat2 inv() const {
    mpz_class dt = det();
    if (dt == 1) return Mat2(d, -b, -c, a);
    if (dt == -1) return Mat2(-d, b, c, -a);
    throw std::domain_error("Mat2::inv: determinant is not +-1");
  }

  bool operator==(const Mat2& o) const {
    return a == o.a && b == o.b && c == o.c && d == o.d;
  }
  bool operator!=(const Mat2& o) const { return !(*this == o); }
};

inline Mat2 mat_mul(const Mat2& x, const Mat2& y) {
  return Mat2(x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
              x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d);
}

// A and -A represent the same element of PSL(2,Z).
inline bool proj_equal(const Mat2& x, const Mat2& y) {
  return x == y || x == y.neg();
}

inline std::ostream& operator<<(std::ostream& os, const Mat2& m) {
  return os << "[[" << m.a << "," << m.b << "],[" << m.c << "," << m.d << "]]";
}

} // namespace lewislab
