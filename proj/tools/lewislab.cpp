// Command line front end: eigenspace dimensions, table generation, conjecture
// checks, dimension-formula tables and raw system dumps.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <lewislab/lewislab.hpp>

using namespace lewislab;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitMismatch = 1;
constexpr int kExitUsage = 2;

GroupSpec parse_group(const std::string& s) {
  auto colon = s.find(':');
  if (colon == std::string::npos)
    throw std::invalid_argument("group must look like gamma:N or gamma0:N");
  GroupSpec g;
  g.family = parse_family(s.substr(0, colon));
  g.level = std::stoi(s.substr(colon + 1));
  require_level(g.level);
  return g;
}

// "4", "2..12" or "3,5,7"; ranges step by `step`.
std::vector<int> parse_range(const std::string& s, int step) {
  std::vector<int> out;
  auto dots = s.find("..");
  if (dots != std::string::npos) {
    int lo = std::stoi(s.substr(0, dots));
    int hi = std::stoi(s.substr(dots + 2));
    for (int v = lo; v <= hi; v += step) out.push_back(v);
    return out;
  }
  size_t pos = 0;
  while (pos < s.size()) {
    size_t comma = s.find(',', pos);
    if (comma == std::string::npos) comma = s.size();
    out.push_back(std::stoi(s.substr(pos, comma - pos)));
    pos = comma + 1;
  }
  return out;
}

std::vector<int> parse_even_range(const std::string& s) {
  std::vector<int> vals = parse_range(s, 2);
  for (int v : vals)
    if (v < 2 || v % 2 != 0)
      throw std::invalid_argument("degree values must be even and >= 2: " + s);
  return vals;
}

RankStrategy parse_strategy(const std::string& s) {
  if (s == "exact") return RankStrategy::exact;
  if (s == "modular") return RankStrategy::modular;
  if (s == "auto") return RankStrategy::auto_pick;
  throw std::invalid_argument("unknown rank strategy: " + s);
}

std::vector<int> parse_lambdas(const std::string& s) {
  if (s == "plus") return {+1};
  if (s == "minus") return {-1};
  if (s == "both") return {+1, -1};
  throw std::invalid_argument("lambda must be plus, minus or both");
}

int cmd_dim(const std::string& group_s, int n, const std::string& lambda_s,
            const std::string& system_s, const std::string& rank_s,
            const std::string& format, bool shifted) {
  GroupSpec group = parse_group(group_s);
  SystemKind kind = parse_system_kind(system_s);
  RankStrategy strategy = parse_strategy(rank_s);
  BuildOptions opt;
  opt.shifted_basis = shifted;
  std::vector<int> lambdas = parse_lambdas(lambda_s);

  json out = json::array();
  long long total = 0;
  for (int lambda : lambdas) {
    auto t0 = std::chrono::steady_clock::now();
    LewisSystem sys = build_system(group, n, lambda, kind, opt);
    RankResult rr = compute_rank(sys.matrix, strategy);
    long long dim = static_cast<long long>(sys.matrix.cols - rr.rank);
    total += dim;
    json j;
    j["family"] = family_name(group.family);
    j["N"] = group.level;
    j["n"] = n;
    j["lambda"] = lambda_name(lambda);
    j["system"] = system_name(kind);
    j["dim"] = dim;
    j["rank"] = rr.rank;
    j["rows"] = sys.matrix.rows;
    j["cols"] = sys.matrix.cols;
    j["rank_method"] = rank_method_name(rr.method);
    j["tool_version"] = kToolVersion;
    j["meta"] = json{{"elapsed_ms", detail::ms_since(t0)}};
    out.push_back(j);
  }

  if (format == "json") {
    std::cout << out.dump(2) << '\n';
  } else if (lambdas.size() == 1) {
    std::cout << out[0]["dim"].get<long long>() << '\n';
  } else {
    std::cout << "plus=" << out[0]["dim"].get<long long>()
              << " minus=" << out[1]["dim"].get<long long>() << " total=" << total << '\n';
  }
  return kExitOk;
}

int cmd_table(const std::string& family_s, const std::string& levels_s,
              const std::string& degrees_s, const std::string& system_s,
              const std::string& rank_s, const std::string& format, int jobs,
              const std::string& cache_flag) {
  TableSpec spec;
  spec.family = parse_family(family_s);
  spec.levels = parse_range(levels_s, 1);
  spec.degrees = parse_even_range(degrees_s);
  spec.kind = parse_system_kind(system_s);
  spec.strategy = parse_strategy(rank_s);
  spec.jobs = jobs;
  spec.cache_dir = cache_dir_from_env(cache_flag);
  for (int level : spec.levels) require_level(level);

  std::vector<CellResult> cells = run_table(spec);
  if (format == "markdown")
    std::cout << render_table_markdown(spec, cells);
  else if (format == "csv")
    std::cout << render_table_csv(cells);
  else
    std::cout << render_table_json(cells);

  for (const auto& c : cells)
    if (!c.report) return kExitMismatch;
  return kExitOk;
}

int cmd_check(const std::string& family_s, const std::string& levels_s,
              const std::string& degrees_s, const std::string& system_s,
              const std::string& rank_s, int jobs, const std::string& cache_flag,
              const std::string& annotations_path, const std::string& format) {
  TableSpec spec;
  spec.family = parse_family(family_s);
  spec.levels = parse_range(levels_s, 1);
  spec.degrees = parse_even_range(degrees_s);
  spec.kind = parse_system_kind(system_s);
  spec.strategy = parse_strategy(rank_s);
  spec.jobs = jobs;
  spec.cache_dir = cache_dir_from_env(cache_flag);
  for (int level : spec.levels) require_level(level);

  std::string ann_path = annotations_path;
  if (ann_path.empty()) {
    const char* env = std::getenv("LEWISLAB_ANNOTATIONS");
    if (env) ann_path = env;
  }
  std::vector<TableAnnotation> annotations = load_annotations(ann_path);

  std::vector<CellResult> cells = run_table(spec);
  bool all_ok = true;
  json jout = json::array();
  for (const auto& c : cells) {
    if (!c.report) {
      all_ok = false;
      std::cout << family_name(c.group.family) << " N=" << c.group.level << " n=" << c.n
                << ": ERROR " << c.error << '\n';
      continue;
    }
    const DimReport& r = *c.report;
    all_ok = all_ok && r.match;
    if (format == "json") {
      json j = report_to_json(r);
      if (const TableAnnotation* a = find_annotation(annotations, r.group, r.n))
        j["printed"] = a->printed;
      jout.push_back(j);
      continue;
    }
    std::cout << family_name(r.group.family) << " N=" << r.group.level << " n=" << r.n
              << ": computed " << r.dim_total << " predicted " << r.predicted << ' '
              << (r.match ? "MATCH" : "MISMATCH");
    if (const TableAnnotation* a = find_annotation(annotations, r.group, r.n))
      std::cout << " [paper-table discrepancy (suspected typo): printed " << a->printed
                << "]";
    std::cout << '\n';
  }
  if (format == "json") std::cout << jout.dump(2) << '\n';
  return all_ok ? kExitOk : kExitMismatch;
}

int cmd_eichler(const std::string& family_s, int level, const std::string& k_s,
                const std::string& format) {
  GroupSpec g{parse_family(family_s), level};
  require_level(level);
  std::vector<int> ks = parse_even_range(k_s);
  if (format == "csv") std::cout << "k,dim_cusp_k_plus_2,v_inf,dim_eichler\n";
  for (int k : ks) {
    EichlerPrediction p = eichler_prediction(g, k);
    if (format == "csv")
      std::cout << k << ',' << p.dim_cusp_k_plus_2 << ',' << p.v_inf << ','
                << p.dim_eichler << '\n';
    else
      std::cout << "k=" << k << " dim=" << p.dim_eichler << '\n';
  }
  return kExitOk;
}

int cmd_upsilon(const std::string& k_s, const std::string& format) {
  std::vector<int> ks = parse_even_range(k_s);
  if (format == "csv") std::cout << "k,dim\n";
  for (int k : ks) {
    if (format == "csv")
      std::cout << k << ',' << dim_upsilon_formula(k) << '\n';
    else
      std::cout << "k=" << k << " dim=" << dim_upsilon_formula(k) << '\n';
  }
  return kExitOk;
}

int cmd_dump(const std::string& group_s, int n, const std::string& lambda_s,
             const std::string& system_s, const std::string& out_path, bool shifted) {
  GroupSpec group = parse_group(group_s);
  SystemKind kind = parse_system_kind(system_s);
  std::vector<int> lambdas = parse_lambdas(lambda_s);
  if (lambdas.size() != 1)
    throw std::invalid_argument("dump-system needs --lambda plus or minus");
  BuildOptions opt;
  opt.shifted_basis = shifted;
  LewisSystem sys = build_system(group, n, lambdas[0], kind, opt);
  if (out_path.empty()) {
    dump_text(sys.matrix, std::cout);
  } else {
    std::ofstream out(out_path, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + out_path);
    dump_text(sys.matrix, out);
  }
  return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"transfer-operator polynomial eigenspaces for modular groups"};
  app.require_subcommand(1);

  std::string group_s, lambda_s = "both", system_s = "extended", rank_s = "auto";
  std::string family_s = "gamma", levels_s, degrees_s, k_s;
  std::string format, cache_flag, out_path, annotations_path;
  int n = 0, level = 2, jobs = 0;
  bool shifted = false;

  CLI::App* dim = app.add_subcommand("dim", "dimension of one eigenspace");
  dim->add_option("--group", group_s, "gamma:N or gamma0:N")->required();
  dim->add_option("--n", n, "even degree >= 2")->required();
  dim->add_option("--lambda", lambda_s, "plus | minus | both");
  dim->add_option("--system", system_s, "extended | reduced | full | master");
  dim->add_option("--rank", rank_s, "exact | modular | auto");
  dim->add_option("--format", format, "text | json");
  dim->add_flag("--shifted", shifted, "assemble in the f(z)=phi(z+1) basis");

  CLI::App* table = app.add_subcommand("table", "grid of summed dimensions");
  table->add_option("--family", family_s, "gamma | gamma0")->required();
  table->add_option("--N", levels_s, "level or range, e.g. 3..6 or 3,5,7")->required();
  table->add_option("--n", degrees_s, "even degree range, e.g. 2..12")->required();
  table->add_option("--system", system_s, "system kind");
  table->add_option("--rank", rank_s, "rank strategy");
  table->add_option("--format", format, "markdown | csv | json");
  table->add_option("--jobs", jobs, "worker threads (0 = all cores)");
  table->add_option("--cache", cache_flag, "cache directory (or env LEWISLAB_CACHE)");

  CLI::App* check = app.add_subcommand("check", "computed vs predicted dimensions");
  check->add_option("--family", family_s)->required();
  check->add_option("--N", levels_s)->required();
  check->add_option("--n", degrees_s)->required();
  check->add_option("--system", system_s);
  check->add_option("--rank", rank_s);
  check->add_option("--jobs", jobs);
  check->add_option("--cache", cache_flag);
  check->add_option("--annotations", annotations_path, "paper-table annotation file");
  check->add_option("--format", format, "text | json");

  CLI::App* eich = app.add_subcommand("eichler", "Eichler cohomology dimension formulas");
  eich->add_option("--family", family_s)->required();
  eich->add_option("--N", level)->required();
  eich->add_option("--k", k_s, "even weight range")->required();
  eich->add_option("--format", format, "text | csv");

  CLI::App* ups = app.add_subcommand("upsilon", "dim Upsilon_k closed formula");
  ups->add_option("--k", k_s, "even weight range")->required();
  ups->add_option("--format", format, "text | csv");

  CLI::App* dump = app.add_subcommand("dump-system", "write an assembled matrix as text");
  dump->add_option("--group", group_s)->required();
  dump->add_option("--n", n)->required();
  dump->add_option("--lambda", lambda_s, "plus | minus");
  dump->add_option("--system", system_s);
  dump->add_option("--out", out_path, "output file (default stdout)");
  dump->add_flag("--shifted", shifted);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (dim->parsed()) {
      if (n < 2 || n % 2 != 0) throw std::invalid_argument("n must be even and >= 2");
      return cmd_dim(group_s, n, lambda_s, system_s, rank_s, format, shifted);
    }
    if (table->parsed())
      return cmd_table(family_s, levels_s, degrees_s, system_s, rank_s, format, jobs,
                       cache_flag);
    if (check->parsed())
      return cmd_check(family_s, levels_s, degrees_s, system_s, rank_s, jobs, cache_flag,
                       annotations_path, format);
    if (eich->parsed()) return cmd_eichler(family_s, level, k_s, format);
    if (ups->parsed()) return cmd_upsilon(k_s, format);
    if (dump->parsed()) {
      if (n < 2 || n % 2 != 0) throw std::invalid_argument("n must be even and >= 2");
      return cmd_dump(group_s, n, lambda_s, system_s, out_path, shifted);
    }
  } catch (const UnsupportedGroupError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitMismatch;
  }
  return kExitUsage;
}
