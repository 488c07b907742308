#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

constexpr double kPi = std::numbers::pi;

struct RunResult {
  int code;
  std::string out;
};

fs::path work_dir() {
  static fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / "helixgeo_cli_suite";
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

RunResult run_cli(const std::string& args) {
  fs::path capture = work_dir() / "capture.txt";
  std::string cmd = std::string(HELIXGEO_BIN) + " " + args + " > " +
                    capture.string() + " 2>&1";
  int status = std::system(cmd.c_str());
  int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream is(capture);
  std::stringstream ss;
  ss << is.rdbuf();
  return {code, ss.str()};
}

int count_lines_starting(const std::string& text, const std::string& prefix) {
  int n = 0;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line))
    if (line.rfind(prefix, 0) == 0) ++n;
  return n;
}

}  // namespace

TEST_CASE("help and bad invocations") {
  CHECK(run_cli("--help").code == 0);
  CHECK(run_cli("").code != 0);
  CHECK(run_cli("--no-such-flag").code != 0);
  CHECK(run_cli("frobnicate").code != 0);
}

TEST_CASE("area of the plain ring to stdout") {
  RunResult r = run_cli("area --a 2 --b 1 --c 0 --d 0 --phi-span 6.283185307179586");
  REQUIRE(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["area"].get<double>() ==
        doctest::Approx(4 * kPi * kPi * 2).epsilon(1e-10));
}

TEST_CASE("invalid geometry exits with the validation code") {
  RunResult r = run_cli("mesh --a 1 --b 1 --d 0 --out " +
                        (work_dir() / "never.obj").string());
  CHECK(r.code == 1);
  CHECK(r.out.find("axis") != std::string::npos);
}

TEST_CASE("numerical breakdown exits with the runtime code") {
  RunResult r = run_cli(
      "geodesic --a 2 --b 1 --c 0.8 --d 0 --beta 0.9 --lambda-end 40 "
      "--max-events 2 --out " +
      (work_dir() / "storm.csv").string());
  CHECK(r.code == 2);
}

TEST_CASE("unwritable output exits with the runtime code") {
  RunResult r = run_cli("area --d 0 --out /no_such_dir_za9/x.json");
  CHECK(r.code == 2);
}

TEST_CASE("geodesic requires an output path") {
  RunResult r = run_cli("geodesic --a 2 --b 1 --c 0.8 --d 0 --lambda-end 5");
  CHECK(r.code == 1);
}

TEST_CASE("geodesic writes the trace and a summary next to it") {
  fs::path csv = work_dir() / "trace.csv";
  fs::path summary = work_dir() / "trace.summary.json";
  fs::remove(csv);
  fs::remove(summary);

  RunResult r = run_cli(
      "geodesic --a 2 --b 1 --c 0.8 --d 0 --beta 0.9 --energy 0.5 "
      "--lambda-end 20 --out " +
      csv.string());
  REQUIRE(r.code == 0);
  REQUIRE(fs::exists(csv));
  REQUIRE(fs::exists(summary));

  std::ifstream ic(csv);
  std::string header;
  std::getline(ic, header);
  CHECK(header == "lambda,r,chi_wrapped,phi,x,y,z,ur,uphi,ell_drift,E_drift");

  std::ifstream isum(summary);
  std::stringstream ss;
  ss << isum.rdbuf();
  auto j = nlohmann::json::parse(ss.str());
  CHECK(j["classification"] == "bound");
  CHECK(j["drift"]["ell"].get<double>() < 1e-8);
}

TEST_CASE("mesh writes a wavefront file") {
  fs::path obj = work_dir() / "tube.obj";
  RunResult r = run_cli(
      "mesh --a 2 --b 1 --c 0.8 --d 0 --n-chi 8 --n-phi 8 --revolutions 1 "
      "--out " +
      obj.string());
  REQUIRE(r.code == 0);
  std::ifstream is(obj);
  std::stringstream ss;
  ss << is.rdbuf();
  CHECK(count_lines_starting(ss.str(), "v ") == 72);
  CHECK(count_lines_starting(ss.str(), "f ") == 128);
}

TEST_CASE("potential profile on stdout") {
  RunResult r = run_cli("potential --a 2 --b 1 --c 0.8 --d 0 --samples 5");
  REQUIRE(r.code == 0);
  CHECK(count_lines_starting(r.out, "r,V,") == 1);
  CHECK(count_lines_starting(r.out, "# equilibrium,") == 2);
}

TEST_CASE("curvature profile on stdout") {
  RunResult r = run_cli("curvature --a 2 --b 1 --c 0.8 --d 0 --samples 3");
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("r,K\n", 0) == 0);
}

TEST_CASE("sweep rows honour the requested count") {
  RunResult r = run_cli(
      "sweep --a 2 --b 1 --c 0.8 --d 0 --beta-min 0.3 --beta-max 1.5 "
      "--count 9 --energy 0.5");
  REQUIRE(r.code == 0);
  int rows = 0;
  std::istringstream is(r.out);
  std::string line;
  while (std::getline(is, line)) ++rows;
  CHECK(rows == 10);  // header + 9
  CHECK(r.out.rfind("beta,ell,E,kind,r_plus,half_period_lambda\n", 0) == 0);
}

TEST_CASE("config file supplies values and flags override it") {
  fs::path cfg = work_dir() / "run.json";
  {
    std::ofstream os(cfg);
    os << R"({"a": 2.0, "b": 1.0, "c": 0.8, "d": 0.0, "samples": 7})";
  }

  RunResult file_only = run_cli("potential --config " + cfg.string());
  REQUIRE(file_only.code == 0);
  // 7 grid rows follow from the file
  int grid = 0;
  std::istringstream is(file_only.out);
  std::string line;
  while (std::getline(is, line))
    if (!line.empty() && line[0] != '#' && line[0] != 'r') ++grid;
  CHECK(grid == 7);

  RunResult overridden =
      run_cli("potential --config " + cfg.string() + " --samples 3");
  REQUIRE(overridden.code == 0);
  int grid2 = 0;
  std::istringstream is2(overridden.out);
  while (std::getline(is2, line))
    if (!line.empty() && line[0] != '#' && line[0] != 'r') ++grid2;
  CHECK(grid2 == 3);
}

TEST_CASE("malformed config is a validation failure") {
  fs::path cfg = work_dir() / "broken.json";
  {
    std::ofstream os(cfg);
    os << "{ not json";
  }
  CHECK(run_cli("potential --config " + cfg.string()).code == 1);
  CHECK(run_cli("potential --config /no/such/file.json").code == 2);
}

TEST_CASE("the exact-pitch shortcut pins c") {
  RunResult r = run_cli("area --legendre-exact --a 2 --b 1 --d 0");
  REQUIRE(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["surface"]["c"].get<double>() ==
        doctest::Approx(2.5 / kPi).epsilon(1e-15));
}
