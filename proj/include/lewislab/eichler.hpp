#pragma once

#include <stdexcept>

#include "psl2.hpp"

namespace lewislab {

inline void require_even_weight(int k) {
  if (k < 2 || k % 2 != 0)
    throw std::invalid_argument("weight must be an even integer >= 2");
}

// dim C_k: (k-1)(g-1) + (k/2-1) v_inf + [k/4] v2 + [k/3] v3 for even k > 2,
// and dim C_2 = g. Brackets are floors.
inline long long dim_cusp(const GroupSpec& group, int k) {
  require_even_weight(k);
  SurfaceInvariants s = surface_invariants(group);
  if (k == 2) return s.genus;
  long long d = (k - 1) * (s.genus - 1) + (k / 2 - 1) * s.v_inf + (k / 4) * s.v2 +
                (k / 3) * s.v3;
  if (d < 0) throw std::logic_error("dim_cusp: negative dimension");
  return d;
}

// dim A_k = dim C_k + v_inf; the complement is spanned by Eisenstein series.
inline long long dim_automorphic(const GroupSpec& group, int k) {
  require_even_weight(k);
  return dim_cusp(group, k) + surface_invariants(group).v_inf;
}

// dim E_k = 2 dim C_{k+2} + v_inf.
inline long long dim_eichler(const GroupSpec& group, int k) {
  require_even_weight(k);
  return 2 * dim_cusp(group, k + 2) + surface_invariants(group).v_inf;
}

// dim Upsilon_k = 2 [(k-1)/4] + 2.
inline long long dim_upsilon_formula(int k) {
  require_even_weight(k);
  return 2 * ((k - 1) / 4) + 2;
}

struct EichlerPrediction {
  GroupSpec group;
  int k = 2;
  long long dim_cusp_k_plus_2 = 0;
  long long dim_eichler = 0;
  long long v_inf = 0;
};

inline EichlerPrediction eichler_prediction(const GroupSpec& group, int k) {
  require_even_weight(k);
  EichlerPrediction p;
  p.group = group;
  p.k = k;
  p.dim_cusp_k_plus_2 = dim_cusp(group, k + 2);
  p.v_inf = surface_invariants(group).v_inf;
  p.dim_eichler = 2 * p.dim_cusp_k_plus_2 + p.v_inf;
  return p;
}

} // namespace lewislab
