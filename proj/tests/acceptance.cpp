// Acceptance suite: reruns the paper-scale experiments end to end and prints
// one pass/fail line per criterion. Progress notes go to stderr.
#include <atomic>
#include <chrono>
#include <cstdio>
#include <functional>
#include <mutex>
#include <random>
#include <string>
#include <vector>

#include <lewislab/lewislab.hpp>

using namespace lewislab;

namespace {

int g_failures = 0;

void report(int criterion, bool pass, const std::string& what, const std::string& detail) {
  printf("criterion %d: %s - %s%s%s\n", criterion, pass ? "PASS" : "FAIL", what.c_str(),
         detail.empty() ? "" : " ", detail.c_str());
  fflush(stdout);
  if (!pass) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

long long extended_total(const GroupSpec& g, int n, double* max_cell_seconds = nullptr) {
  auto t0 = std::chrono::steady_clock::now();
  long long total = 0;
  for (int lambda : {+1, -1}) {
    LewisSystem sys = build_extended_system(g, n, lambda);
    total += static_cast<long long>(sys.matrix.cols - rank_modular(sys.matrix).rank);
  }
  double s = seconds_since(t0);
  if (max_cell_seconds && s > *max_cell_seconds) *max_cell_seconds = s;
  fprintf(stderr, "  [%s N=%d n=%d] total=%lld (%.1fs)\n", family_name(g.family), g.level,
          n, total, s);
  return total;
}

bool parity_pure(const std::vector<mpq_class>& v, size_t components, size_t poly_len,
                 int parity) {
  for (size_t c = 0; c < components; ++c)
    for (size_t k = 0; k < poly_len; ++k)
      if (int(k % 2) != parity && v[c * poly_len + k] != 0) return false;
  return true;
}

// ---- criterion 1: Prop 7.1 exact reproduction -----------------------------

void criterion1() {
  bool ok = true;
  std::string detail;
  for (int n = 2; n <= 20 && ok; n += 2) {
    for (auto kind : {SystemKind::extended, SystemKind::reduced}) {
      for (int lambda : {+1, -1}) {
        auto t0 = std::chrono::steady_clock::now();
        LewisSystem sys = build_system(principal_group(2), n, lambda, kind);
        long long dim =
            static_cast<long long>(sys.matrix.cols - rank_modular(sys.matrix).rank);
        double s = seconds_since(t0);
        long long want = lambda == -1 ? n / 2 + 2 : n / 2 - 1;
        if (dim != want) {
          ok = false;
          detail = "(n=" + std::to_string(n) + " " + system_name(kind) +
                   " lambda=" + std::to_string(lambda) + ": got " + std::to_string(dim) +
                   " want " + std::to_string(want) + ")";
        }
        if (s >= 5.0) {
          ok = false;
          detail += " instance exceeded 5s";
        }
      }
    }
  }
  report(1, ok,
         "Prop 7.1: Gamma(2) extended+reduced give dim-=n/2+2, dim+=n/2-1 for n in [2,20], "
         "<5s each",
         detail);
}

// ---- criterion 2: Table 1 --------------------------------------------------

void criterion2() {
  struct Cell {
    int level, n;
    long long printed;
  };
  std::vector<Cell> cells;
  const long long t1_n3[6] = {6, 10, 14, 18, 22, 24};
  const long long t1_n4[6] = {12, 20, 28, 36, 44, 52};
  const long long t1_n5[6] = {30, 50, 70, 90, 110, 130};
  const long long t1_n6[6] = {36, 60, 84, 108, 132, 156};
  for (int i = 0; i < 6; ++i) {
    cells.push_back({3, 2 * i + 2, t1_n3[i]});
    cells.push_back({4, 2 * i + 2, t1_n4[i]});
    cells.push_back({5, 2 * i + 2, t1_n5[i]});
    cells.push_back({6, 2 * i + 2, t1_n6[i]});
  }
  cells.push_back({7, 2, 84});
  cells.push_back({7, 4, 140});
  cells.push_back({7, 6, 196});
  cells.push_back({7, 8, 242}); // annotated: formula value is 252
  cells.push_back({8, 2, 96});
  cells.push_back({8, 4, 160});

  auto annotations = default_annotations();
  bool ok = true;
  std::string detail;
  double worst_cell = 0;
  for (const Cell& c : cells) {
    GroupSpec g = principal_group(c.level);
    long long got = extended_total(g, c.n, &worst_cell);
    const TableAnnotation* ann = find_annotation(annotations, g, c.n);
    long long want = ann ? dim_eichler(g, c.n) : c.printed;
    if (ann) {
      fprintf(stderr,
              "  [gamma N=%d n=%d] paper-table discrepancy (suspected typo): printed %lld, "
              "conjecture formula %lld, computed %lld\n",
              c.level, c.n, ann->printed, want, got);
    }
    if (got != want) {
      ok = false;
      detail += " (N=" + std::to_string(c.level) + ",n=" + std::to_string(c.n) + ": got " +
                std::to_string(got) + " want " + std::to_string(want) + ")";
    }
  }
  if (worst_cell >= 600.0) {
    ok = false;
    detail += " cell runtime budget of 10min exceeded";
  }
  char buf[128];
  snprintf(buf, sizeof buf, "(worst cell %.1fs; two annotated cells surfaced: 26 vs "
                            "printed 24, 252 vs printed 242)",
           worst_cell);
  report(2, ok, "Table 1 reproduced for N=3..8 with the two annotated exceptions",
         detail.empty() ? buf : detail);
}

// ---- criterion 3: Table 2 --------------------------------------------------

void criterion3() {
  const int levels[6] = {3, 5, 7, 11, 13, 17};
  const long long printed[12][6] = {
      {2, 4, 4, 6, 8, 10},    {4, 4, 8, 10, 12, 14},   {4, 8, 8, 14, 16, 22},
      {6, 8, 12, 18, 20, 26},  {8, 12, 16, 22, 28, 34}, {8, 12, 16, 26, 28, 38},
      {10, 16, 20, 30, 36, 46}, {12, 16, 24, 34, 40, 50}, {12, 20, 24, 38, 44, 58},
      {14, 20, 28, 42, 48, 62}, {16, 24, 32, 46, 56, 70}, {16, 24, 32, 50, 56, 74}};

  bool ok = true;
  std::string detail;

  auto tf = std::chrono::steady_clock::now();
  for (int row = 0; row < 12; ++row)
    for (int col = 0; col < 6; ++col) {
      long long formula = dim_eichler(hecke_group(levels[col]), 2 * row + 2);
      if (formula != printed[row][col]) {
        ok = false;
        detail += " (formula N=" + std::to_string(levels[col]) +
                  ",n=" + std::to_string(2 * row + 2) + ")";
      }
    }
  double formula_seconds = seconds_since(tf);
  if (formula_seconds >= 1.0) {
    ok = false;
    detail += " formula side exceeded 1s";
  }

  for (int col = 0; col < 6; ++col)
    for (int row = 0; row < 12; ++row) {
      int n = 2 * row + 2;
      long long got = extended_total(hecke_group(levels[col]), n);
      if (got != printed[row][col]) {
        ok = false;
        detail += " (N=" + std::to_string(levels[col]) + ",n=" + std::to_string(n) +
                  ": got " + std::to_string(got) + " want " +
                  std::to_string(printed[row][col]) + ")";
      }
    }
  char buf[64];
  snprintf(buf, sizeof buf, "(formula side %.3fs for all 72 cells)", formula_seconds);
  report(3, ok, "Table 2: all 72 cells match the Lewis dimensions and the Eichler formulas",
         detail.empty() ? buf : detail);
}

// ---- criterion 4: Upsilon --------------------------------------------------

void criterion4() {
  bool ok = true;
  std::string detail;
  for (int k = 2; k <= 30; k += 2) {
    auto t0 = std::chrono::steady_clock::now();
    LewisSystem sys = build_upsilon_system(k);
    long long dim = static_cast<long long>(sys.matrix.cols - rank_exact(sys.matrix).rank);
    double s = seconds_since(t0);
    if (dim != 2 * ((k - 1) / 4) + 2 || s >= 1.0) {
      ok = false;
      detail += " (k=" + std::to_string(k) + ": dim " + std::to_string(dim) + ")";
    }
  }
  report(4, ok, "Upsilon_k nullspace dimension equals 2[(k-1)/4]+2 for k in [2,30], <1s each",
         detail);
}

// ---- criterion 5: Gamma_0(2) chain ------------------------------------------

void criterion5() {
  bool ok = true;
  std::string detail;
  for (int n = 2; n <= 24; n += 2) {
    long long tilde_total = 0;
    std::vector<std::vector<mpq_class>> image;
    LinMap tmap = tilde_t_map(n);
    IntMat ups = build_upsilon_system(n).matrix;
    for (int lambda : {+1, -1}) {
      LewisSystem sys = build_gamma02_tilde_system(n, lambda);
      auto basis = nullspace_basis(sys.matrix);
      tilde_total += static_cast<long long>(basis.size());
      for (const auto& v : basis) {
        auto w = apply_mat(tmap, v);
        for (const auto& r : apply_mat(ups, w))
          if (r != 0) {
            ok = false;
            detail += " (T-image not in Upsilon at n=" + std::to_string(n) + ")";
          }
        image.push_back(w);
      }
    }
    if (tilde_total != 2 * ((n - 1) / 4) + 3) {
      ok = false;
      detail += " (tilde total n=" + std::to_string(n) + ": " + std::to_string(tilde_total) + ")";
    }
    long long hecke2 = extended_total(hecke_group(2), n);
    if (hecke2 != tilde_total - 1) {
      ok = false;
      detail += " (Prop 8.2 n=" + std::to_string(n) + ")";
    }
    size_t ups_dim = ups.cols - rank_exact(ups).rank;
    if (rank_exact(from_rational_rows(image)).rank != ups_dim) {
      ok = false;
      detail += " (image does not span Upsilon at n=" + std::to_string(n) + ")";
    }
  }
  report(5, ok,
         "Gamma_0(2) chain: dim tilde = 2[(n-1)/4]+3, Prop 8.2 offset 1, tilde-T image "
         "spans Upsilon_n, n in [2,24]",
         detail);
}

// ---- criterion 6: parity of exact bases -------------------------------------

void criterion6() {
  bool ok = true;
  std::string detail;
  for (int n = 2; n <= 24; n += 2) {
    for (const auto& v : nullspace_basis(build_gamma02_tilde_system(n, +1).matrix))
      if (!parity_pure(v, 1, size_t(n) + 2, 1)) {
        ok = false;
        detail += " (tilde +1 not odd at n=" + std::to_string(n) + ")";
      }
    for (const auto& v : nullspace_basis(build_gamma02_tilde_system(n, -1).matrix))
      if (!parity_pure(v, 1, size_t(n) + 2, 0)) {
        ok = false;
        detail += " (tilde -1 not even at n=" + std::to_string(n) + ")";
      }
  }
  for (int n = 2; n <= 20; n += 2) {
    for (const auto& v : nullspace_basis(build_gamma2_pair_system(n, -1).matrix))
      if (!parity_pure(v, 2, size_t(n) + 1, 0)) {
        ok = false;
        detail += " (pair -1 not even at n=" + std::to_string(n) + ")";
      }
  }
  report(6, ok,
         "parity: tilde bases odd (+1) / even (-1) for n in [2,24]; Gamma(2) pair -1 bases "
         "componentwise even",
         detail);
}

// ---- criterion 7: Eichler internal consistency ------------------------------

void criterion7() {
  bool ok = true;
  std::string detail;
  for (int level = 2; level <= 12; ++level) {
    SurfaceInvariants s = surface_invariants(principal_group(level));
    for (int k = 2; k <= 24; k += 2) {
      if (2 * dim_cusp(principal_group(level), k + 2) + s.v_inf != s.index / 6 * (k + 1)) {
        ok = false;
        detail += " (N=" + std::to_string(level) + ",k=" + std::to_string(k) + ")";
      }
    }
  }
  report(7, ok, "2 dim C_{k+2}(Gamma(N)) + v_inf = (index/6)(k+1) for N in [2,12], k in [2,24]",
         detail);
}

// ---- criterion 8: oracle equivalence ----------------------------------------

void criterion8() {
  // Every (group, n, lambda, kind) the suite assembles, including every
  // Table 1 and Table 2 cell; systems over 1500 columns are outside the
  // criterion's bound.
  struct Job {
    GroupSpec g;
    int n;
    int lambda;
    SystemKind kind;
  };
  std::vector<Job> jobs;
  for (int n = 2; n <= 20; n += 2) {
    for (const GroupSpec& g : {principal_group(2), hecke_group(2)}) {
      for (int lambda : {+1, -1}) {
        jobs.push_back({g, n, lambda, SystemKind::extended});
        jobs.push_back({g, n, lambda, SystemKind::reduced});
        jobs.push_back({g, n, lambda, SystemKind::full});
      }
      jobs.push_back({g, n, 0, SystemKind::master});
    }
    jobs.push_back({principal_group(2), n, +1, SystemKind::gamma2_pair});
    jobs.push_back({principal_group(2), n, -1, SystemKind::gamma2_pair});
    jobs.push_back({hecke_group(2), n, +1, SystemKind::gamma02_tilde});
    jobs.push_back({hecke_group(2), n, -1, SystemKind::gamma02_tilde});
    jobs.push_back({hecke_group(2), n, 0, SystemKind::upsilon});
  }
  for (int level = 3; level <= 6; ++level)
    for (int n = 2; n <= 12; n += 2)
      for (int lambda : {+1, -1})
        jobs.push_back({principal_group(level), n, lambda, SystemKind::extended});
  for (int n : {2, 4, 6})
    for (int lambda : {+1, -1})
      jobs.push_back({principal_group(7), n, lambda, SystemKind::extended});
  for (int n : {2, 4})
    for (int lambda : {+1, -1})
      jobs.push_back({principal_group(8), n, lambda, SystemKind::extended});
  for (int level : {3, 5, 7, 11, 13, 17})
    for (int n = 2; n <= 24; n += 2)
      for (int lambda : {+1, -1})
        jobs.push_back({hecke_group(level), n, lambda, SystemKind::extended});
  for (int n : {2, 4}) {
    for (const GroupSpec& g : {principal_group(3), hecke_group(5)}) {
      jobs.push_back({g, n, 0, SystemKind::master});
      jobs.push_back({g, n, -1, SystemKind::full});
    }
  }

  std::atomic<size_t> checked{0}, residual_checked{0}, skipped{0};
  std::atomic<bool> ok{true};
  std::mutex detail_mutex;
  std::string detail;
  auto fail = [&](const std::string& what) {
    ok = false;
    std::lock_guard<std::mutex> lock(detail_mutex);
    detail += " (" + what + ")";
  };

  parallel_for(jobs.size(), 0, [&](size_t idx) {
    const Job& job = jobs[idx];
    LewisSystem sys = job.kind == SystemKind::master
                          ? build_master_system(job.g, job.n)
                          : build_system(job.g, job.n, job.lambda, job.kind);
    if (sys.matrix.cols > 1500) {
      ++skipped;
      return;
    }
    size_t exact = rank_exact(sys.matrix).rank;
    size_t modular = rank_modular(sys.matrix).rank;
    ++checked;
    if (exact != modular)
      fail(std::string("rank mismatch on ") + system_name(job.kind) + " N=" +
           std::to_string(job.g.level) + " n=" + std::to_string(job.n));
    if (sys.matrix.cols <= 160) {
      auto basis = nullspace_basis(sys.matrix);
      if (basis.size() + exact != sys.matrix.cols) fail("rank+nullity mismatch");
      for (const auto& v : basis)
        for (const auto& r : apply_mat(sys.matrix, v))
          if (r != 0) fail(std::string("nonzero residual on ") + system_name(job.kind));
      ++residual_checked;
    }
  });
  fprintf(stderr,
          "  [criterion 8] %zu systems rank-checked, %zu residual-checked, %zu over the "
          "column bound\n",
          checked.load(), residual_checked.load(), skipped.load());

  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<long> entry(-1000000, 1000000);
  for (int trial = 0; trial < 100; ++trial) {
    size_t rows = 1 + rng() % 40, cols = 1 + rng() % 40;
    IntMat m(rows, cols);
    for (auto& e : m.e) e = entry(rng);
    if (trial % 3 == 0 && rows >= 2)
      for (size_t j = 0; j < cols; ++j) m.at(rows - 1, j) = 2 * m.at(0, j);
    if (rank_exact(m).rank != rank_modular(m).rank)
      fail("random matrix trial " + std::to_string(trial));
  }
  report(8, ok,
         "modular rank == exact rank on every assembled system (<=1500 cols) and 100 random "
         "matrices; nullspace residuals exactly zero",
         detail);
}

// ---- criterion 9: convention robustness -------------------------------------

void criterion9() {
  bool ok = true;
  std::string detail;
  std::mt19937_64 rng(4242);
  struct Case {
    GroupSpec g;
    int n;
    SystemKind kind;
    int lambda;
  };
  std::vector<Case> cases = {{principal_group(2), 6, SystemKind::extended, -1},
                             {principal_group(2), 6, SystemKind::reduced, +1},
                             {principal_group(3), 4, SystemKind::extended, +1},
                             {principal_group(3), 2, SystemKind::full, -1},
                             {hecke_group(5), 4, SystemKind::extended, +1},
                             {hecke_group(2), 8, SystemKind::master, 0}};
  for (const Case& c : cases) {
    auto build = [&](const BuildOptions& opt) {
      return c.kind == SystemKind::master ? build_master_system(c.g, c.n, opt)
                                          : build_system(c.g, c.n, c.lambda, c.kind, opt);
    };
    long long expect =
        static_cast<long long>(build({}).matrix.cols - rank_modular(build({}).matrix).rank);
    BuildOptions shifted;
    shifted.shifted_basis = true;
    long long got =
        static_cast<long long>(build(shifted).matrix.cols - rank_modular(build(shifted).matrix).rank);
    if (got != expect) {
      ok = false;
      detail += " (shifted basis changed a dimension)";
    }
    CosetTable base = coset_table(c.g);
    for (int seed = 0; seed < 10; ++seed) {
      std::vector<size_t> rho(base.size);
      for (size_t i = 0; i < rho.size(); ++i) rho[i] = i;
      std::shuffle(rho.begin(), rho.end(), rng);
      CosetTable shuffled = relabel(base, rho);
      BuildOptions opt;
      opt.table = &shuffled;
      opt.shifted_basis = seed % 2 == 1;
      long long relabeled =
          static_cast<long long>(build(opt).matrix.cols - rank_modular(build(opt).matrix).rank);
      if (relabeled != expect) {
        ok = false;
        detail += " (relabeling changed a dimension, seed " + std::to_string(seed) + ")";
      }
    }
  }
  report(9, ok,
         "dimensions invariant under 10 random coset relabelings and the f(z)=phi(z+1) "
         "change of variable",
         detail);
}

} // namespace

int main() {
  auto t0 = std::chrono::steady_clock::now();
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  criterion9();
  fprintf(stderr, "acceptance total: %.1fs\n", seconds_since(t0));
  if (g_failures == 0)
    printf("all 9 acceptance criteria passed\n");
  else
    printf("%d acceptance criteria FAILED\n", g_failures);
  return g_failures == 0 ? 0 : 1;
}
