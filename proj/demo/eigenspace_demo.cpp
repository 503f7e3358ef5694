// Minimal library walkthrough: assemble the Lewis system for one group,
// compute its nullspace dimension both ways, and compare with the
// Eichler-side prediction.
#include <cstdio>

#include <lewislab/lewislab.hpp>

using namespace lewislab;

int main() {
  GroupSpec group = hecke_group(5);
  int n = 6;

  CosetTable table = coset_table(group);
  printf("Gamma_0(%d): index %lld, %zu cosets\n", group.level, group_index(group),
         table.size);

  SurfaceInvariants s = surface_invariants(group);
  printf("surface: v2=%lld v3=%lld cusps=%lld genus=%lld\n", s.v2, s.v3, s.v_inf, s.genus);

  long long total = 0;
  for (int lambda : {+1, -1}) {
    LewisSystem sys = build_extended_system(group, n, lambda);
    RankResult rank = rank_modular(sys.matrix);
    long long dim = (long long)(sys.matrix.cols - rank.rank);
    total += dim;
    printf("lambda=%+d: %zux%zu system, rank %zu (%s), dim %lld\n", lambda,
           sys.matrix.rows, sys.matrix.cols, rank.rank, rank_method_name(rank.method), dim);
  }

  long long predicted = dim_eichler(group, n);
  printf("total %lld vs dim E_%d = %lld -> %s\n", total, n, predicted,
         total == predicted ? "match" : "MISMATCH");
  return total == predicted ? 0 : 1;
}
