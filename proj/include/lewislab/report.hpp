#pragma once

#include <unistd.h>

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <optional>
#include <sstream>
#include <thread>
#include <vector>

#include <json.hpp>

#include "lewis.hpp"
#include "version.hpp"

namespace lewislab {

using nlohmann::json;

inline const char* rank_method_name(RankMethod m) {
  return m == RankMethod::exact ? "exact" : "modular";
}

inline std::string lambda_name(int lambda) {
  return lambda > 0 ? "plus" : (lambda < 0 ? "minus" : "none");
}

// Stable fields first, timing confined to the "meta" section.
inline json report_to_json(const DimReport& r) {
  json j;
  j["family"] = family_name(r.group.family);
  j["N"] = r.group.level;
  j["n"] = r.n;
  j["dim_plus"] = r.dim_plus;
  j["dim_minus"] = r.dim_minus;
  j["dim_total"] = r.dim_total;
  j["predicted"] = r.predicted;
  j["match"] = r.match;
  j["system"] = system_name(r.kind);
  j["rank_method"] = rank_method_name(r.rank_method);
  j["tool_version"] = kToolVersion;
  j["meta"] = json{{"elapsed_ms", r.elapsed_ms}};
  return j;
}

inline Family parse_family(const std::string& s) {
  if (s == "gamma" || s == "principal") return Family::principal;
  if (s == "gamma0" || s == "hecke") return Family::hecke;
  throw std::invalid_argument("unknown family: " + s);
}

inline SystemKind parse_system_kind(const std::string& s) {
  for (SystemKind k : {SystemKind::extended, SystemKind::reduced, SystemKind::full,
                       SystemKind::master, SystemKind::gamma2_pair,
                       SystemKind::gamma02_tilde, SystemKind::upsilon})
    if (s == system_name(k)) return k;
  throw std::invalid_argument("unknown system kind: " + s);
}

inline DimReport report_from_json(const json& j) {
  DimReport r;
  r.group.family = parse_family(j.at("family").get<std::string>());
  r.group.level = j.at("N").get<int>();
  r.n = j.at("n").get<int>();
  r.dim_plus = j.at("dim_plus").get<long long>();
  r.dim_minus = j.at("dim_minus").get<long long>();
  r.dim_total = j.at("dim_total").get<long long>();
  r.predicted = j.at("predicted").get<long long>();
  r.match = j.at("match").get<bool>();
  r.kind = parse_system_kind(j.at("system").get<std::string>());
  r.rank_method = j.at("rank_method").get<std::string>() == "exact" ? RankMethod::exact
                                                                    : RankMethod::modular;
  if (j.contains("meta") && j["meta"].contains("elapsed_ms"))
    r.elapsed_ms = j["meta"]["elapsed_ms"].get<double>();
  return r;
}

inline bool stable_equal(const DimReport& a, const DimReport& b) {
  return a.group == b.group && a.n == b.n && a.kind == b.kind && a.dim_plus == b.dim_plus &&
         a.dim_minus == b.dim_minus && a.dim_total == b.dim_total &&
         a.predicted == b.predicted && a.match == b.match && a.rank_method == b.rank_method;
}

// ---- result cache: one JSON-lines file per record key ----

struct CacheKey {
  Family family;
  int level = 2;
  int n = 2;
  int lambda = 1;
  SystemKind kind = SystemKind::extended;

  std::string file_name() const {
    std::ostringstream os;
    os << family_name(family) << '_' << level << "_n" << n << '_' << lambda_name(lambda)
       << '_' << system_name(kind) << "_v" << kToolVersion << ".jsonl";
    return os.str();
  }
};

struct CacheEntry {
  long long dim = 0;
  size_t rank = 0;
  size_t rows = 0;
  size_t cols = 0;
  RankMethod method = RankMethod::modular;
  double elapsed_ms = 0.0;
};

inline std::string utc_timestamp() {
  std::time_t t = std::time(nullptr);
  char buf[32];
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

class ResultCache {
 public:
  explicit ResultCache(std::string dir) : dir_(std::move(dir)) {
    if (!dir_.empty()) std::filesystem::create_directories(dir_);
  }

  bool enabled() const { return !dir_.empty(); }

  std::optional<CacheEntry> get(const CacheKey& key) const {
    if (!enabled()) return std::nullopt;
    std::ifstream in(path(key));
    if (!in) return std::nullopt;
    std::string line, last;
    while (std::getline(in, line))
      if (!line.empty()) last = line;
    if (last.empty()) return std::nullopt;
    try {
      json j = json::parse(last);
      if (j.at("tool_version").get<std::string>() != kToolVersion) return std::nullopt;
      CacheEntry e;
      e.dim = j.at("dim").get<long long>();
      e.rank = j.at("rank").get<size_t>();
      e.rows = j.at("rows").get<size_t>();
      e.cols = j.at("cols").get<size_t>();
      e.method = j.at("rank_method").get<std::string>() == "exact" ? RankMethod::exact
                                                                   : RankMethod::modular;
      if (j.contains("meta") && j["meta"].contains("elapsed_ms"))
        e.elapsed_ms = j["meta"]["elapsed_ms"].get<double>();
      return e;
    } catch (const std::exception&) {
      return std::nullopt; // unreadable entries are recomputed
    }
  }

  void put(const CacheKey& key, const CacheEntry& e) const {
    if (!enabled()) return;
    json j;
    j["family"] = family_name(key.family);
    j["N"] = key.level;
    j["n"] = key.n;
    j["lambda"] = lambda_name(key.lambda);
    j["system"] = system_name(key.kind);
    j["tool_version"] = kToolVersion;
    j["dim"] = e.dim;
    j["rank"] = e.rank;
    j["rows"] = e.rows;
    j["cols"] = e.cols;
    j["rank_method"] = rank_method_name(e.method);
    j["meta"] = json{{"elapsed_ms", e.elapsed_ms}, {"timestamp", utc_timestamp()}};
    // atomic per key: write a temp file, then rename over the target
    std::string target = path(key);
    std::string tmp = target + ".tmp." + std::to_string(::getpid());
    {
      std::ofstream out(tmp, std::ios::trunc);
      out << j.dump() << '\n';
    }
    std::filesystem::rename(tmp, target);
  }

 private:
  std::string path(const CacheKey& key) const {
    return (std::filesystem::path(dir_) / key.file_name()).string();
  }

  std::string dir_;
};

inline std::string cache_dir_from_env(const std::string& flag_value) {
  if (!flag_value.empty()) return flag_value;
  const char* env = std::getenv("LEWISLAB_CACHE");
  return env ? env : "";
}

// ---- known printed-table anomalies ----

// Paper-table cells whose printed value disagrees with the conjecture
// formula that every other cell satisfies. Formula agreement counts as
// success there; the report surfaces the printed value as a suspected typo.
struct TableAnnotation {
  Family family;
  int level;
  int n;
  long long printed;
};

inline std::vector<TableAnnotation> default_annotations() {
  return {{Family::principal, 3, 12, 24}, {Family::principal, 7, 8, 242}};
}

inline std::vector<TableAnnotation> load_annotations(const std::string& path) {
  if (path.empty()) return default_annotations();
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open annotation file: " + path);
  json j = json::parse(in);
  std::vector<TableAnnotation> out;
  for (const auto& item : j) {
    out.push_back(TableAnnotation{parse_family(item.at("family").get<std::string>()),
                                  item.at("N").get<int>(), item.at("n").get<int>(),
                                  item.at("printed").get<long long>()});
  }
  return out;
}

inline const TableAnnotation* find_annotation(const std::vector<TableAnnotation>& anns,
                                              const GroupSpec& g, int n) {
  for (const auto& a : anns)
    if (a.family == g.family && a.level == g.level && a.n == n) return &a;
  return nullptr;
}

// ---- table / check drivers ----

struct TableSpec {
  Family family = Family::principal;
  std::vector<int> levels;
  std::vector<int> degrees; // even values only
  SystemKind kind = SystemKind::extended;
  RankStrategy strategy = RankStrategy::auto_pick;
  int jobs = 0; // 0 = hardware concurrency
  std::string cache_dir;
};

struct CellResult {
  GroupSpec group;
  int n = 0;
  std::optional<DimReport> report; // empty on failure
  std::string error;
};

// One (group, n) cell: both lambda signs, cache consulted per sign. The
// master system has no lambda and is computed once.
inline DimReport run_cell(const GroupSpec& group, int n, SystemKind kind,
                          RankStrategy strategy, const ResultCache& cache) {
  auto t0 = std::chrono::steady_clock::now();
  DimReport rep;
  rep.group = group;
  rep.n = n;
  rep.kind = kind;
  bool any_exact = false;
  std::vector<int> lambdas = kind == SystemKind::master ? std::vector<int>{0}
                                                        : std::vector<int>{+1, -1};
  for (int lambda : lambdas) {
    CacheKey key{group.family, group.level, n, lambda, kind};
    long long dim;
    RankMethod method;
    if (auto hit = cache.get(key)) {
      dim = hit->dim;
      method = hit->method;
    } else {
      LewisSystem sys = build_system(group, n, lambda, kind);
      RankResult rr = compute_rank(sys.matrix, strategy);
      dim = static_cast<long long>(sys.matrix.cols - rr.rank);
      method = rr.method;
      cache.put(key, CacheEntry{dim, rr.rank, sys.matrix.rows, sys.matrix.cols, rr.method,
                                rr.elapsed_ms});
    }
    (lambda >= 0 ? rep.dim_plus : rep.dim_minus) = dim;
    any_exact = any_exact || method == RankMethod::exact;
  }
  rep.dim_total = rep.dim_plus + rep.dim_minus;
  rep.predicted = dim_eichler(group, n);
  rep.match = rep.dim_total == rep.predicted;
  rep.rank_method = any_exact ? RankMethod::exact : RankMethod::modular;
  rep.elapsed_ms = detail::ms_since(t0);
  return rep;
}

template <class F>
inline void parallel_for(size_t njobs, int workers, F&& f) {
  if (workers <= 0) workers = static_cast<int>(std::thread::hardware_concurrency());
  if (workers < 1) workers = 1;
  std::atomic<size_t> next{0};
  auto body = [&] {
    for (;;) {
      size_t i = next.fetch_add(1);
      if (i >= njobs) return;
      f(i);
    }
  };
  std::vector<std::thread> pool;
  for (int w = 1; w < workers && w < static_cast<int>(njobs); ++w) pool.emplace_back(body);
  body();
  for (auto& t : pool) t.join();
}

inline std::vector<CellResult> run_table(const TableSpec& spec) {
  ResultCache cache(spec.cache_dir);
  std::vector<CellResult> cells;
  for (int level : spec.levels)
    for (int n : spec.degrees)
      cells.push_back(CellResult{GroupSpec{spec.family, level}, n, std::nullopt, ""});
  parallel_for(cells.size(), spec.jobs, [&](size_t i) {
    try {
      cells[i].report =
          run_cell(cells[i].group, cells[i].n, spec.kind, spec.strategy, cache);
    } catch (const std::exception& e) {
      cells[i].error = e.what();
    }
  });
  return cells;
}

// ---- rendering ----

inline std::string render_table_markdown(const TableSpec& spec,
                                         const std::vector<CellResult>& cells) {
  std::ostringstream os;
  os << "| N \\ n |";
  for (int n : spec.degrees) os << " " << n << " |";
  os << "\n|---|";
  for (size_t i = 0; i < spec.degrees.size(); ++i) os << "---|";
  os << '\n';
  size_t idx = 0;
  for (int level : spec.levels) {
    os << "| " << level << " |";
    for (size_t j = 0; j < spec.degrees.size(); ++j, ++idx) {
      if (cells[idx].report)
        os << " " << cells[idx].report->dim_total << " |";
      else
        os << " ERR |";
    }
    os << '\n';
  }
  return os.str();
}

inline std::string render_table_csv(const std::vector<CellResult>& cells) {
  std::ostringstream os;
  os << "family,N,n,dim_plus,dim_minus,dim_total,predicted,match,system,rank_method,"
        "tool_version\n";
  for (const auto& c : cells) {
    if (c.report) {
      const DimReport& r = *c.report;
      os << family_name(r.group.family) << ',' << r.group.level << ',' << r.n << ','
         << r.dim_plus << ',' << r.dim_minus << ',' << r.dim_total << ',' << r.predicted
         << ',' << (r.match ? "true" : "false") << ',' << system_name(r.kind) << ','
         << rank_method_name(r.rank_method) << ',' << kToolVersion << '\n';
    } else {
      os << family_name(c.group.family) << ',' << c.group.level << ',' << c.n
         << ",ERR,ERR,ERR,ERR,false,,," << kToolVersion << '\n';
    }
  }
  return os.str();
}

inline std::string render_table_json(const std::vector<CellResult>& cells) {
  json arr = json::array();
  for (const auto& c : cells) {
    if (c.report) {
      arr.push_back(report_to_json(*c.report));
    } else {
      json j;
      j["family"] = family_name(c.group.family);
      j["N"] = c.group.level;
      j["n"] = c.n;
      j["error"] = c.error;
      arr.push_back(j);
    }
  }
  return arr.dump(2) + "\n";
}

} // namespace lewislab
