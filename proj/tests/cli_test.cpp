#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>
#include <unistd.h>

namespace fs = std::filesystem;

namespace {

const std::string kCli = REGRETLAB_CLI_PATH;

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("regretlab_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
};

int run_cli(const std::string& args) {
  const std::string cmd = "cd / && \"" + kCli + "\" " + args + " > /dev/null 2>&1";
  const int rc = std::system(cmd.c_str());
  return WEXITSTATUS(rc);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

int count_lines(const std::string& s) {
  int n = 0;
  for (char c : s) n += c == '\n';
  return n;
}

}  // namespace

TEST_CASE("run emits a trace with one row per round plus a summary") {
  TempDir tmp;
  const fs::path out = tmp.path / "trace.csv";
  const int rc = run_cli("run --alg grid-mixture --norm l1 --B 1 --d 1 --T 16 --seed 7 "
                         "--out " + out.string());
  REQUIRE(rc == 0);
  const std::string csv = slurp(out);
  CHECK(count_lines(csv) == 17);  // header + 16 rounds
  CHECK(csv.rfind("round,alg_loss_nats,comparator_loss_nats,cum_regret_nats\n", 0) == 0);
  const std::string summary = slurp(fs::path(out.string() + ".summary.json"));
  CHECK(summary.find("final_regret") != std::string::npos);
  CHECK(summary.find("theorem2_bound") != std::string::npos);
  CHECK(summary.find("upper_bound_formula") != std::string::npos);
}

TEST_CASE("every algorithm runs") {
  TempDir tmp;
  for (const char* alg : {"grid-mixture", "gauss-mixture", "kt", "ogd"}) {
    const fs::path out = tmp.path / (std::string(alg) + ".csv");
    const int rc = run_cli("run --alg " + std::string(alg) +
                           " --norm l2 --B 1 --d 2 --T 8 --seed 3 --out " + out.string());
    CHECK(rc == 0);
    CHECK(count_lines(slurp(out)) == 9);
  }
}

TEST_CASE("identical flags give byte-identical artifacts") {
  TempDir tmp;
  const fs::path a = tmp.path / "a.csv";
  const fs::path b = tmp.path / "b.csv";
  const std::string flags = "run --alg grid-mixture --norm l2 --B 1 --d 2 --T 32 --seed 11 ";
  REQUIRE(run_cli(flags + "--out " + a.string()) == 0);
  REQUIRE(run_cli(flags + "--out " + b.string()) == 0);
  CHECK(slurp(a) == slurp(b));
  CHECK(slurp(fs::path(a.string() + ".summary.json")) ==
        slurp(fs::path(b.string() + ".summary.json")));
}

TEST_CASE("bounds subcommand reports the closed-form values") {
  TempDir tmp;
  const fs::path out = tmp.path / "bounds.json";
  REQUIRE(run_cli("bounds --norm linf --d 2 --B 1 --T 100 --out " + out.string()) == 0);
  const std::string text = slurp(out);
  CHECK(text.find("upper_nats") != std::string::npos);
  CHECK(text.find("4.258096") != std::string::npos);
}

TEST_CASE("distinguish and capacity emit their reports") {
  TempDir tmp;
  const fs::path d_out = tmp.path / "dist.json";
  REQUIRE(run_cli("distinguish --d 1 --T 64 --grid-points 5 --trials 200 --seed 9 --out " +
                  d_out.string()) == 0);
  const std::string dist = slurp(d_out);
  CHECK(dist.find("error_rate_Pe") != std::string::npos);
  CHECK(dist.find("grid_cardinality_M") != std::string::npos);

  const fs::path c_out = tmp.path / "cap.json";
  REQUIRE(run_cli("capacity --d 1 --T 64 --grid-points 3 --trials 100 --seed 9 --out " +
                  c_out.string()) == 0);
  const std::string cap = slurp(c_out);
  CHECK(cap.find("measured_expected_regret") != std::string::npos);
  CHECK(cap.find("violation") != std::string::npos);

  const fs::path csv_out = tmp.path / "dist.csv";
  REQUIRE(run_cli("distinguish --d 1 --T 64 --grid-points 3 --trials 100 --seed 9 "
                  "--format csv --out " + csv_out.string()) == 0);
  const std::string csv = slurp(csv_out);
  CHECK(count_lines(csv) == 2);
  CHECK(csv.find("error_rate_Pe") != std::string::npos);
}

TEST_CASE("sweep writes one row per cell with a status column") {
  TempDir tmp;
  const fs::path out = tmp.path / "sweep.csv";
  REQUIRE(run_cli("sweep --d 1,2,4 --T 16,256 --B 0.5,1 --out " + out.string()) == 0);
  const std::string csv = slurp(out);
  CHECK(count_lines(csv) == 1 + 3 * 2 * 2 * 3);  // header + cells x three norms
  CHECK(csv.find("status") != std::string::npos);
  CHECK(csv.find("lower_le_upper") != std::string::npos);

  // infeasible cells keep their row and carry the reason
  const fs::path out2 = tmp.path / "sweep_bad.csv";
  REQUIRE(run_cli("sweep --d 2 --T 1,64 --B 1 --norm l2 --out " + out2.string()) == 0);
  const std::string csv2 = slurp(out2);
  CHECK(count_lines(csv2) == 3);  // header + both cells, none skipped
  CHECK(csv2.find("T must be >= 2") != std::string::npos);
}

TEST_CASE("infeasible configs exit nonzero and write nothing") {
  TempDir tmp;
  const fs::path out = tmp.path / "never.csv";
  CHECK(run_cli("run --alg grid-mixture --norm l1 --B -1 --d 1 --T 16 --out " +
                out.string()) != 0);
  CHECK_FALSE(fs::exists(out));
  // gaussian-prior mixture is undefined for l1
  CHECK(run_cli("run --alg gauss-mixture --norm l1 --B 1 --d 1 --T 16 --out " +
                out.string()) != 0);
  CHECK_FALSE(fs::exists(out));
  // cardinality cap produces a nonzero exit as well
  CHECK(run_cli("run --alg grid-mixture --norm linf --B 8 --d 6 --T 1048576 --out " +
                out.string()) != 0);
  CHECK_FALSE(fs::exists(out));
}

TEST_CASE("config file supplies defaults and flags win") {
  TempDir tmp;
  const fs::path cfg = tmp.path / "exp.cfg";
  {
    std::ofstream out(cfg);
    out << "d=1\nT=16\nseed=7\nalg=grid-mixture\nnorm=l1\nB=1\n";
  }
  const fs::path a = tmp.path / "from_cfg.csv";
  REQUIRE(run_cli("run --config " + cfg.string() + " --out " + a.string()) == 0);
  CHECK(count_lines(slurp(a)) == 17);

  // a flag overrides the file
  const fs::path b = tmp.path / "override.csv";
  REQUIRE(run_cli("run --config " + cfg.string() + " --T 8 --out " + b.string()) == 0);
  CHECK(count_lines(slurp(b)) == 9);
}

TEST_CASE("json trace format mirrors the csv fields") {
  TempDir tmp;
  const fs::path out = tmp.path / "trace.json";
  REQUIRE(run_cli("run --alg kt --d 1 --T 5 --seed 2 --format json --out " + out.string()) ==
          0);
  const std::string text = slurp(out);
  CHECK(text.find("\"alg_loss_nats\"") != std::string::npos);
  CHECK(text.find("\"cum_regret_nats\"") != std::string::npos);
}
