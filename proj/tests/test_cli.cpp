// End-to-end tests for the command-line tool. The binary path is passed as
// the first program argument by CTest.
#define DOCTEST_CONFIG_IMPLEMENT
#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string g_cli;

int run(const std::string& args) {
  const int status = std::system((g_cli + " " + args + " > /dev/null 2>&1").c_str());
  return WEXITSTATUS(status);
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "lapctrl_cli_tests" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("build writes graph files and a summary") {
  const auto dir = fresh_dir("build");
  REQUIRE(run("build --k 4 --n 2 --out " + dir.string()) == 0);

  const json summary = json::parse(slurp(dir / "summary.json"));
  CHECK(summary["num_vertices"] == 8);
  CHECK(summary["num_edges"] == 9);
  CHECK(summary["input_vertex"] == 2);
  CHECK(summary["diameter"] == 5);
  CHECK(summary["max_degree"] == 3);

  const json graph = json::parse(slurp(dir / "graph.json"));
  CHECK(graph["num_vertices"] == 8);
  CHECK(graph["edges"].size() == 9);

  const std::string edge_list = slurp(dir / "graph.txt");
  CHECK(edge_list.find("# vertices 8") != std::string::npos);
}

TEST_CASE("build round-trips through both file formats") {
  const auto dir = fresh_dir("roundtrip");
  REQUIRE(run("build --k 5 --n 2 --extra --out " + dir.string()) == 0);

  const auto from_json = fresh_dir("roundtrip_json");
  REQUIRE(run("spectrum --graph " + (dir / "graph.json").string() + " --out " +
              from_json.string()) == 0);
  const auto from_text = fresh_dir("roundtrip_text");
  REQUIRE(run("spectrum --graph " + (dir / "graph.txt").string() + " --out " +
              from_text.string()) == 0);

  const json a = json::parse(slurp(from_json / "spectrum.json"));
  const json b = json::parse(slurp(from_text / "spectrum.json"));
  CHECK(a["eigenvalues"] == b["eigenvalues"]);
}

TEST_CASE("spectrum reports sorted eigenvalues with a leading zero") {
  const auto dir = fresh_dir("spectrum");
  REQUIRE(run("spectrum --k 4 --n 2 --out " + dir.string()) == 0);

  const json out = json::parse(slurp(dir / "spectrum.json"));
  const auto eigenvalues = out["eigenvalues"].get<std::vector<double>>();
  REQUIRE(eigenvalues.size() == 8);
  CHECK(std::abs(eigenvalues.front()) < 1e-10);
  for (size_t i = 1; i < eigenvalues.size(); ++i) {
    CHECK(eigenvalues[i] > eigenvalues[i - 1]);
  }
  bool saw_grone_merris = false;
  for (const auto& report : out["reports"]) {
    CHECK(report["passed"] == true);
    if (report["name"] == "grone_merris") saw_grone_merris = true;
  }
  CHECK(saw_grone_merris);
}

TEST_CASE("spectrum output is deterministic across runs") {
  const auto dir_a = fresh_dir("det_a");
  const auto dir_b = fresh_dir("det_b");
  REQUIRE(run("spectrum --k 6 --n 3 --out " + dir_a.string()) == 0);
  REQUIRE(run("spectrum --k 6 --n 3 --out " + dir_b.string()) == 0);
  CHECK(slurp(dir_a / "spectrum.json") == slurp(dir_b / "spectrum.json"));
}

TEST_CASE("check returns 0 for controllable and 1 for sabotaged graphs") {
  const auto dir = fresh_dir("check");
  CHECK(run("check --k 4 --n 2 --out " + dir.string()) == 0);
  const json verdict = json::parse(slurp(dir / "verdict.json"));
  CHECK(verdict["controllable"] == true);
  CHECK(verdict["min_abs_projection"].get<double>() > 1e-8);

  const auto bad = fresh_dir("check_sabotaged");
  CHECK(run("check --k 4 --n 2 --sabotage drop-cross-edge --out " +
            bad.string()) == 1);
  const json bad_verdict = json::parse(slurp(bad / "verdict.json"));
  CHECK(bad_verdict["controllable"] == false);
}

TEST_CASE("check at a poorly chosen input vertex fails") {
  const auto dir = fresh_dir("check_bad_input");
  CHECK(run("check --k 4 --n 2 --input-vertex 8 --out " + dir.string()) == 1);
}

TEST_CASE("verify passes on a clean grid and fails under sabotage") {
  const auto dir = fresh_dir("verify");
  CHECK(run("verify --kmin 2 --kmax 5 --nmin 1 --nmax 3 --random-graphs 100 "
            "--seed 7 --out " + dir.string()) == 0);
  const json out = json::parse(slurp(dir / "verify.json"));
  CHECK(out["passed"] == true);
  CHECK(out["cells"].size() == 12);
  CHECK(out["random_corpus"]["disagreements"] == 0);

  const auto bad = fresh_dir("verify_sabotaged");
  CHECK(run("verify --kmin 4 --kmax 4 --nmin 2 --nmax 2 "
            "--sabotage drop-cross-edge --out " + bad.string()) == 1);
  const json bad_out = json::parse(slurp(bad / "verify.json"));
  CHECK(bad_out["passed"] == false);
}

TEST_CASE("simulate writes a trajectory CSV with a sidecar") {
  const auto dir = fresh_dir("simulate");
  REQUIRE(run("simulate --k 4 --n 2 --t1 5 --steps 500 --x0-fill -1 "
              "--xf-fill 1 --out " + dir.string()) == 0);

  const std::string csv = slurp(dir / "trajectory.csv");
  std::istringstream lines(csv);
  std::string header;
  std::getline(lines, header);
  CHECK(header == "t,x1,x2,x3,x4,x5,x6,x7,x8,u");
  int rows = 0;
  for (std::string line; std::getline(lines, line);) ++rows;
  CHECK(rows == 501);

  const json sidecar = json::parse(slurp(dir / "trajectory.json"));
  CHECK(sidecar["controllable"] == true);
  CHECK(sidecar["terminal_error"].get<double>() < 1e-6);
  CHECK(sidecar["energy"].get<double>() > 0.0);
}

TEST_CASE("simulate --compare fig2 reproduces the energy ordering") {
  const auto dir = fresh_dir("fig2");
  REQUIRE(run("simulate --compare fig2 --t1 2 --steps 500 --out " +
              dir.string()) == 0);

  const json out = json::parse(slurp(dir / "fig2.json"));
  CHECK(out["ordering_holds"] == true);
  REQUIRE(out["systems"].size() == 3);
  const double path = out["systems"][0]["energy"].get<double>();
  const double inter = out["systems"][1]["energy"].get<double>();
  const double anti = out["systems"][2]["energy"].get<double>();
  CHECK(path > inter);
  CHECK(inter > anti);
  for (const char* name : {"path8.csv", "interconnect42.csv",
                           "antiregular8.csv"}) {
    CHECK(fs::exists(dir / name));
  }
}

TEST_CASE("sweep emits one CSV row per grid cell") {
  const auto dir = fresh_dir("sweep");
  REQUIRE(run("sweep --kmin 3 --kmax 5 --nmin 1 --nmax 2 --t1 5 --steps 300 "
              "--out " + dir.string()) == 0);

  const std::string csv = slurp(dir / "sweep.csv");
  std::istringstream lines(csv);
  std::string header;
  std::getline(lines, header);
  CHECK(header ==
        "k,n,vertices,diameter,max_degree,controllable,min_gap,energy");
  int rows = 0;
  for (std::string line; std::getline(lines, line);) {
    CHECK(line.find(",1,") != std::string::npos);  // all cells controllable
    ++rows;
  }
  CHECK(rows == 6);
}

TEST_CASE("usage errors exit with code 2") {
  CHECK(run("") == 2);
  CHECK(run("no-such-command") == 2);
  CHECK(run("simulate --t1 -1") == 2);
  CHECK(run("check --graph /nonexistent/file.json") != 0);
}

TEST_CASE("infeasible horizons exit with code 3") {
  const auto dir = fresh_dir("infeasible");
  CHECK(run("simulate --k 4 --n 2 --t1 0.001 --steps 200 --out " +
            dir.string()) == 3);
}

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: %s <path-to-cli> [doctest args]\n", argv[0]);
    return 1;
  }
  g_cli = argv[1];
  doctest::Context context;
  context.applyCommandLine(argc - 1, argv + 1);
  return context.run();
}
