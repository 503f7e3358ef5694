#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

#include <lewislab/int_mat.hpp>

namespace {

struct CliResult {
  int exit_code;
  std::string out;
};

CliResult run_cli(const std::string& args) {
  std::string cmd = "env -u LEWISLAB_CACHE -u LEWISLAB_ANNOTATIONS " LEWISLAB_BIN " " +
                    args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
  int status = pclose(pipe);
  int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return {code, out};
}

} // namespace

TEST_CASE("dim command") {
  CliResult r = run_cli("dim --group gamma:2 --n 8 --lambda minus --system reduced");
  CHECK(r.exit_code == 0);
  CHECK(r.out == "6\n");

  r = run_cli("dim --group gamma:2 --n 8 --lambda plus --system reduced");
  CHECK(r.out == "3\n");

  r = run_cli("dim --group gamma0:7 --n 10 --lambda both");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("total=16") != std::string::npos);

  SECTION("json output") {
    r = run_cli("dim --group gamma0:3 --n 4 --lambda both --format json");
    CHECK(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.out);
    REQUIRE(j.is_array());
    REQUIRE(j.size() == 2);
    CHECK(j[0]["dim"].get<long long>() + j[1]["dim"].get<long long>() == 4);
    CHECK(j[0]["system"] == "extended");
  }
}

TEST_CASE("usage errors exit with code 2") {
  CHECK(run_cli("dim --group gamma:3 --n 3").exit_code == 2);
  CHECK(run_cli("dim --group gamma:1 --n 2").exit_code == 2);
  CHECK(run_cli("dim --group gamma:3 --n 4 --system reduced").exit_code == 2); // chi(T^2) != I
  CHECK(run_cli("dim --group bogus:3 --n 4").exit_code == 2);
  CHECK(run_cli("dim --n 4").exit_code == 2);
  CHECK(run_cli("table --family gamma --N 3 --n 3..5").exit_code == 2);
  CHECK(run_cli("definitely-not-a-command").exit_code == 2);
}

TEST_CASE("upsilon and eichler commands") {
  CliResult r = run_cli("upsilon --k 2..10");
  CHECK(r.exit_code == 0);
  CHECK(r.out ==
        "k=2 dim=2\nk=4 dim=2\nk=6 dim=4\nk=8 dim=4\nk=10 dim=6\n");

  r = run_cli("eichler --family gamma --N 2 --k 2..6");
  CHECK(r.out == "k=2 dim=3\nk=4 dim=5\nk=6 dim=7\n");

  r = run_cli("eichler --family gamma0 --N 13 --k 12..12");
  CHECK(r.out == "k=12 dim=28\n");

  CHECK(run_cli("upsilon --k 3..5").exit_code == 2);
}

TEST_CASE("table command") {
  CliResult r = run_cli("table --family gamma0 --N 3 --n 2..6 --format csv");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("gamma0,3,2,2,0,2,2,true") != std::string::npos);
  CHECK(r.out.find("gamma0,3,4,4,0,4,4,true") != std::string::npos);
  CHECK(r.out.find("gamma0,3,6,4,0,4,4,true") != std::string::npos);

  SECTION("markdown grid") {
    CliResult md = run_cli("table --family gamma0 --N 3,5 --n 2..4 --format markdown");
    CHECK(md.exit_code == 0);
    CHECK(md.out.find("| N \\ n |") != std::string::npos);
    CHECK(md.out.find("| 3 | 2 | 4 |") != std::string::npos);
    CHECK(md.out.find("| 5 | 4 | 4 |") != std::string::npos);
  }

  SECTION("byte-identical across runs") {
    CliResult a = run_cli("table --family gamma0 --N 3 --n 2..4 --format csv");
    CliResult b = run_cli("table --family gamma0 --N 3 --n 2..4 --format csv");
    CHECK(a.out == b.out);
  }
}

TEST_CASE("check command") {
  CliResult r = run_cli("check --family gamma --N 4 --n 2..8");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("MISMATCH") == std::string::npos);
  CHECK(r.out.find("gamma N=4 n=8: computed 36 predicted 36 MATCH") != std::string::npos);

  SECTION("annotated anomaly cell") {
    CliResult a = run_cli("check --family gamma --N 3 --n 12..12");
    CHECK(a.exit_code == 0);
    CHECK(a.out.find("computed 26 predicted 26 MATCH") != std::string::npos);
    CHECK(a.out.find("suspected typo") != std::string::npos);
    CHECK(a.out.find("printed 24") != std::string::npos);
  }

  SECTION("json output parses and round-trips the records") {
    CliResult a = run_cli("check --family gamma0 --N 5 --n 2..4 --format json");
    CHECK(a.exit_code == 0);
    auto j = nlohmann::json::parse(a.out);
    REQUIRE(j.size() == 2);
    CHECK(j[0]["match"] == true);
    CHECK(j[0]["dim_total"] == 4);
  }
}

TEST_CASE("cache does not change outputs") {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "lewislab_cli_cache_test";
  fs::remove_all(dir);
  std::string flag = " --cache " + dir.string();
  CliResult cold = run_cli("table --family gamma0 --N 5 --n 2..6 --format csv" + flag);
  CHECK(cold.exit_code == 0);
  CHECK(fs::exists(dir));
  CHECK_FALSE(fs::is_empty(dir));
  CliResult warm = run_cli("table --family gamma0 --N 5 --n 2..6 --format csv" + flag);
  CliResult plain = run_cli("table --family gamma0 --N 5 --n 2..6 --format csv");
  CHECK(warm.out == cold.out);
  CHECK(plain.out == cold.out);
  fs::remove_all(dir);
}

TEST_CASE("dump-system writes the portable text format") {
  namespace fs = std::filesystem;
  fs::path file = fs::temp_directory_path() / "lewislab_dump_test.txt";
  CliResult r = run_cli("dump-system --group gamma0:2 --n 4 --lambda minus --out " +
                        file.string());
  CHECK(r.exit_code == 0);
  std::ifstream in(file);
  REQUIRE(in.good());
  lewislab::IntMat m = lewislab::parse_text(in);
  CHECK(m.rows == 30); // 2 mu (n+1) with mu = 3
  CHECK(m.cols == 15);
  CHECK_FALSE(m.is_zero());

  CliResult a = run_cli("dump-system --group gamma:2 --n 2 --lambda plus");
  CliResult b = run_cli("dump-system --group gamma:2 --n 2 --lambda plus");
  CHECK(a.out == b.out);
  CHECK(a.out.substr(0, a.out.find('\n')) == "36 18");
  fs::remove(file.string());
}
