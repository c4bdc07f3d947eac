// Command-line front end: build the generalized-path graphs, compute spectra,
// run the verification suite, decide controllability, and simulate
// minimum-energy steering. Exit codes: 0 success/pass, 1 check failure,
// 2 usage error, 3 numeric infeasibility.

#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "CLI11.hpp"
#include "lapctrl/control.hpp"
#include "lapctrl/graph.hpp"
#include "lapctrl/spectral.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace lapctrl;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInfeasible = 3;

struct CommonOpts {
  int k = 4;
  int n = 2;
  bool extra = false;
  int input_vertex = 0;  // 0 = use the builder's designated vertex
  double t1 = 2.0;
  int steps = 1000;
  double tol = 1e-8;
  std::string out_dir = ".";
  unsigned seed = 0;
  std::string graph_file;
  std::string sabotage;  // hidden test hook
};

void write_file(const fs::path& path, const std::string& content) {
  fs::create_directories(path.parent_path().empty() ? "." : path.parent_path());
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
}

Graph load_graph_file(const std::string& file) {
  std::ifstream in(file);
  if (!in) throw std::runtime_error("cannot read " + file);
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();
  if (text.find('{') != std::string::npos && file.ends_with(".json")) {
    return graph_from_json(text);
  }
  return text.front() == '{' ? graph_from_json(text) : graph_from_edge_list(text);
}

Graph apply_sabotage(const Graph& g, const std::string& mode) {
  if (mode.empty()) return g;
  if (mode == "drop-cross-edge") {
    // remove the last edge; for the interconnection builders that is the
    // final cross edge, which disconnects the blocks
    auto edges = g.edges;
    if (!edges.empty()) edges.pop_back();
    return make_graph(g.num_vertices, edges);
  }
  throw CLI::ValidationError("--sabotage", "unknown mode: " + mode);
}

ControlSetup resolve_setup(const CommonOpts& opts) {
  if (!opts.graph_file.empty()) {
    Graph g = apply_sabotage(load_graph_file(opts.graph_file), opts.sabotage);
    const int input = opts.input_vertex > 0 ? opts.input_vertex : 1;
    return ControlSetup{std::move(g), input};
  }
  auto setup = build_generalized_path({opts.k, opts.n, opts.extra});
  setup.graph = apply_sabotage(setup.graph, opts.sabotage);
  if (opts.input_vertex > 0) setup.input_vertex = opts.input_vertex;
  return setup;
}

json report_to_jsonobj(const TheoremReport& report) {
  return json::parse(to_json(report));
}

int cmd_build(const CommonOpts& opts) {
  const auto setup = resolve_setup(opts);
  const fs::path dir(opts.out_dir);
  write_file(dir / "graph.json", to_json(setup.graph));
  write_file(dir / "graph.txt", to_edge_list(setup.graph));

  json summary;
  summary["num_vertices"] = setup.graph.num_vertices;
  summary["num_edges"] = setup.graph.edges.size();
  summary["input_vertex"] = setup.input_vertex;
  const bool connected = is_connected(setup.graph);
  summary["connected"] = connected;
  summary["diameter"] = connected ? json(diameter(setup.graph)) : json(nullptr);
  summary["max_degree"] = max_degree(setup.graph);
  write_file(dir / "summary.json", summary.dump(2) + "\n");
  std::cout << summary.dump(2) << "\n";
  return kExitPass;
}

int cmd_spectrum(const CommonOpts& opts) {
  const auto setup = resolve_setup(opts);
  const auto spec = eigh(laplacian(setup.graph));

  json out;
  out["eigenvalues"] = std::vector<double>(
      spec.eigenvalues.data(), spec.eigenvalues.data() + spec.eigenvalues.size());
  out["reports"] = json::array();
  out["reports"].push_back(report_to_jsonobj(check_distinct(spec)));
  out["reports"].push_back(report_to_jsonobj(check_grone_merris(setup.graph)));
  if (opts.graph_file.empty() && !opts.extra && opts.sabotage.empty()) {
    out["reports"].push_back(
        report_to_jsonobj(check_anchoring({opts.k, opts.n, false}, spec)));
  }
  const fs::path dir(opts.out_dir);
  write_file(dir / "spectrum.json", out.dump(2) + "\n");
  std::cout << out.dump(2) << "\n";
  return kExitPass;
}

int cmd_check(const CommonOpts& opts) {
  const auto setup = resolve_setup(opts);
  const auto verdict = pbh_controllable(setup, opts.tol);
  const std::string text = to_json(verdict);
  write_file(fs::path(opts.out_dir) / "verdict.json", text + "\n");
  std::cout << text << "\n";
  return verdict.controllable ? kExitPass : kExitCheckFailed;
}

struct VerifyCell {
  int k, n;
  bool passed;
  json reports;
};

VerifyCell verify_cell(int k, int n, const std::string& sabotage, double tol) {
  const BlockLayout layout{k, n, false};
  VerifyCell cell{k, n, true, json::array()};

  Graph g = apply_sabotage(interconnect_antiregular(layout), sabotage);
  const Eigen::MatrixXd lap = laplacian(g);
  const auto spec = eigh(lap);

  auto add = [&cell](const TheoremReport& report) {
    cell.reports.push_back(report_to_jsonobj(report));
    cell.passed = cell.passed && report.passed;
  };

  add(check_distinct(spec));
  add(check_grone_merris(g));
  if (sabotage.empty()) {
    add(check_anchoring(layout, spec));
    if (k >= 3) {
      const auto structured = structured_eigenvectors(layout, tol);
      TheoremReport report{"structured_eigenvectors", structured.ok, {}, tol};
      for (const auto& pair : structured.pairs) {
        report.margins.push_back(
            {"residual at spectrum position " + std::to_string(pair.index),
             pair.residual});
      }
      add(report);
    }
  }

  // Weyl against the block-diagonal part, interlacing across the single
  // rank-one update that attaches the last connector edge
  Eigen::MatrixXd base = Eigen::MatrixXd::Zero(k * n, k * n);
  const Eigen::MatrixXd block = laplacian(build_antiregular(k));
  for (int p = 0; p < n; ++p) base.block(p * k, p * k, k, k) = block;
  add(check_weyl(eigh(base), eigh(lap - base), spec));
  if (n > 1 && sabotage.empty()) {
    auto edges = g.edges;
    edges.pop_back();
    add(check_interlacing(eigh(laplacian(make_graph(g.num_vertices, edges))),
                          spec));
  }

  // controllability from the designated vertex, with the rank oracle when small
  const ControlSetup setup{g, layout.kappa_upper()};
  if (is_connected(g)) {
    const auto verdict = pbh_controllable(setup, tol);
    TheoremReport pbh{"pbh_controllable", verdict.controllable,
                      {{"min |v^T b|", verdict.min_abs_projection}}, tol};
    add(pbh);
    if (g.num_vertices <= 12) {
      TheoremReport agree{"kalman_agreement",
                          kalman_rank_oracle(setup) == verdict.controllable,
                          {}, tol};
      add(agree);
    }
    if (verdict.controllable) add(verify_append_vertex(setup, tol));
  } else {
    cell.passed = false;
    cell.reports.push_back(
        {{"name", "connectivity"}, {"passed", false},
         {"margins", json::array()}, {"tolerance", tol}});
  }
  return cell;
}

int cmd_verify(const CommonOpts& opts, int kmin, int kmax, int nmin, int nmax,
               int random_graphs) {
  std::vector<std::pair<int, int>> cells;
  for (int k = kmin; k <= kmax; ++k) {
    for (int n = nmin; n <= nmax; ++n) cells.emplace_back(k, n);
  }
  std::vector<std::future<VerifyCell>> futures;
  futures.reserve(cells.size());
  for (const auto& [k, n] : cells) {
    futures.push_back(std::async(std::launch::async, verify_cell, k, n,
                                 opts.sabotage, opts.tol));
  }

  json out;
  out["cells"] = json::array();
  bool all_passed = true;
  for (auto& future : futures) {
    const VerifyCell cell = future.get();
    all_passed = all_passed && cell.passed;
    out["cells"].push_back({{"k", cell.k},
                            {"n", cell.n},
                            {"passed", cell.passed},
                            {"reports", cell.reports}});
    std::cout << (cell.passed ? "PASS" : "FAIL") << " k=" << cell.k
              << " n=" << cell.n << "\n";
  }

  // randomized PBH/Kalman cross-check corpus
  if (random_graphs > 0) {
    std::mt19937 rng(opts.seed);
    int disagreements = 0;
    for (int trial = 0; trial < random_graphs; ++trial) {
      const int v = 2 + static_cast<int>(rng() % 9);
      std::set<std::pair<int, int>> edges;
      for (int w = 2; w <= v; ++w) {
        edges.insert({1 + static_cast<int>(rng() % (w - 1)), w});
      }
      for (int e = 0; e < v; ++e) {
        int a = 1 + static_cast<int>(rng() % v);
        int b = 1 + static_cast<int>(rng() % v);
        if (a == b) continue;
        if (a > b) std::swap(a, b);
        edges.insert({a, b});
      }
      const Graph g = make_graph(v, {edges.begin(), edges.end()});
      const ControlSetup setup{g, 1 + static_cast<int>(rng() % v)};
      if (pbh_controllable(setup, opts.tol).controllable !=
          kalman_rank_oracle(setup)) {
        ++disagreements;
      }
    }
    out["random_corpus"] = {{"graphs", random_graphs},
                            {"seed", opts.seed},
                            {"disagreements", disagreements}};
    all_passed = all_passed && disagreements == 0;
    std::cout << (disagreements == 0 ? "PASS" : "FAIL") << " random corpus ("
              << random_graphs << " graphs, " << disagreements
              << " disagreements)\n";
  }

  out["passed"] = all_passed;
  write_file(fs::path(opts.out_dir) / "verify.json", out.dump(2) + "\n");
  return all_passed ? kExitPass : kExitCheckFailed;
}

int cmd_simulate(const CommonOpts& opts, const std::string& compare,
                 double x0_fill, double xf_fill, double max_condition) {
  const fs::path dir(opts.out_dir);
  if (compare == "fig2") {
    struct System {
      std::string name;
      ControlSetup setup;
    };
    const std::vector<System> systems{
        {"path8", {build_path(8), 1}},
        {"interconnect42", build_generalized_path({4, 2, false})},
        {"antiregular8", {build_antiregular(8), 4}},
    };
    const Eigen::VectorXd x0 = Eigen::VectorXd::Constant(8, -20.0);
    const Eigen::VectorXd xf = Eigen::VectorXd::Constant(8, 20.0);

    json out;
    std::vector<double> energies;
    for (const auto& sys : systems) {
      // short horizons exceed the default condition guard; report the
      // attained condition per system instead of refusing the comparison
      const auto run = min_energy_control(sys.setup, x0, xf, opts.t1,
                                          opts.steps, 1e18);
      write_file(dir / (sys.name + ".csv"), trajectory_to_csv(run));
      out["systems"].push_back(
          {{"name", sys.name},
           {"energy", run.energy_gramian},
           {"energy_trapezoid", run.energy},
           {"terminal_error", run.terminal_error},
           {"gramian_condition", run.gramian_condition},
           {"condition_degraded", !(run.gramian_condition < max_condition)}});
      energies.push_back(run.energy_gramian);
    }
    const bool ordered = energies[0] > energies[1] && energies[1] > energies[2];
    out["energy_ordering"] = "path8 > interconnect42 > antiregular8";
    out["ordering_holds"] = ordered;
    out["t1"] = opts.t1;
    write_file(dir / "fig2.json", out.dump(2) + "\n");
    std::cout << out.dump(2) << "\n";
    return ordered ? kExitPass : kExitCheckFailed;
  }

  const auto setup = resolve_setup(opts);
  const int v = setup.graph.num_vertices;
  const Eigen::VectorXd x0 = Eigen::VectorXd::Constant(v, x0_fill);
  const Eigen::VectorXd xf = Eigen::VectorXd::Constant(v, xf_fill);
  const auto run =
      min_energy_control(setup, x0, xf, opts.t1, opts.steps, max_condition);
  write_file(dir / "trajectory.csv", trajectory_to_csv(run));
  json sidecar;
  sidecar["energy"] = run.energy_gramian;
  sidecar["energy_trapezoid"] = run.energy;
  sidecar["terminal_error"] = run.terminal_error;
  sidecar["gramian_condition"] = run.gramian_condition;
  const auto verdict = pbh_controllable(setup, opts.tol);
  sidecar["controllable"] = verdict.controllable;
  sidecar["min_abs_projection"] = verdict.min_abs_projection;
  write_file(dir / "trajectory.json", sidecar.dump(2) + "\n");
  std::cout << sidecar.dump(2) << "\n";
  return kExitPass;
}

int cmd_sweep(const CommonOpts& opts, int kmin, int kmax, int nmin, int nmax) {
  struct Row {
    int k, n, vertices, diam, maxdeg;
    bool controllable;
    double min_gap, energy;
  };
  std::vector<std::pair<int, int>> cells;
  for (int k = kmin; k <= kmax; ++k) {
    for (int n = nmin; n <= nmax; ++n) cells.emplace_back(k, n);
  }
  auto run_cell = [&opts](int k, int n) {
    const auto setup = build_generalized_path({k, n, opts.extra});
    const auto spec = eigh(laplacian(setup.graph));
    Row row{k,
            n,
            setup.graph.num_vertices,
            diameter(setup.graph),
            max_degree(setup.graph),
            pbh_controllable(setup, opts.tol).controllable,
            check_distinct(spec).margins.front().value,
            0.0};
    const int v = setup.graph.num_vertices;
    const Eigen::VectorXd x0 = Eigen::VectorXd::Constant(v, -1.0);
    const Eigen::VectorXd xf = Eigen::VectorXd::Constant(v, 1.0);
    try {
      row.energy =
          min_energy_control(setup, x0, xf, opts.t1, opts.steps).energy_gramian;
    } catch (const InfeasibleHorizonError&) {
      row.energy = std::numeric_limits<double>::quiet_NaN();
    }
    return row;
  };

  std::vector<std::future<Row>> futures;
  for (const auto& [k, n] : cells) {
    futures.push_back(std::async(std::launch::async, run_cell, k, n));
  }
  std::ostringstream csv;
  csv.precision(12);
  csv << "k,n,vertices,diameter,max_degree,controllable,min_gap,energy\n";
  for (auto& future : futures) {
    const Row row = future.get();
    csv << row.k << "," << row.n << "," << row.vertices << "," << row.diam
        << "," << row.maxdeg << "," << (row.controllable ? 1 : 0) << ","
        << row.min_gap << "," << row.energy << "\n";
  }
  write_file(fs::path(opts.out_dir) / "sweep.csv", csv.str());
  std::cout << csv.str();
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generalized-path Laplacian controllability toolkit"};
  app.require_subcommand(1);
  app.set_config("--config");

  CommonOpts opts;
  auto add_common = [&opts](CLI::App* cmd, bool with_dynamics) {
    cmd->add_option("--k", opts.k, "vertices per antiregular block (>= 2)");
    cmd->add_option("--n", opts.n, "number of blocks (>= 1)");
    cmd->add_flag("--extra", opts.extra, "append one extra vertex");
    cmd->add_option("--input-vertex", opts.input_vertex,
                    "override the designated input vertex");
    cmd->add_option("--graph", opts.graph_file,
                    "read the graph from a JSON or edge-list file");
    cmd->add_option("--tol", opts.tol, "numeric tolerance")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--out", opts.out_dir, "output directory");
    cmd->add_option("--seed", opts.seed, "seed for randomized corpora");
    cmd->add_option("--sabotage", opts.sabotage, "test hook")
        ->group("");  // hidden
    if (with_dynamics) {
      cmd->add_option("--t1", opts.t1, "steering horizon")
          ->check(CLI::PositiveNumber);
      cmd->add_option("--steps", opts.steps, "time-grid intervals");
    }
  };

  auto* build = app.add_subcommand("build", "construct a generalized path");
  add_common(build, false);

  auto* spectrum = app.add_subcommand("spectrum", "Laplacian spectrum + reports");
  add_common(spectrum, false);

  auto* check = app.add_subcommand("check", "PBH controllability verdict");
  add_common(check, false);

  auto* verify = app.add_subcommand("verify", "run the theorem checker grid");
  add_common(verify, false);
  int kmin = 2, kmax = 6, nmin = 1, nmax = 4, random_graphs = 0;
  verify->add_option("--kmin", kmin);
  verify->add_option("--kmax", kmax);
  verify->add_option("--nmin", nmin);
  verify->add_option("--nmax", nmax);
  verify->add_option("--random-graphs", random_graphs,
                     "extra PBH/Kalman cross-check corpus size");

  auto* simulate = app.add_subcommand("simulate", "minimum-energy steering");
  add_common(simulate, true);
  std::string compare;
  double x0_fill = -20.0, xf_fill = 20.0, max_condition = 1e12;
  simulate->add_option("--compare", compare, "comparison preset (fig2)");
  simulate->add_option("--x0-fill", x0_fill, "initial state fill value");
  simulate->add_option("--xf-fill", xf_fill, "target state fill value");
  simulate->add_option("--max-condition", max_condition,
                       "Gramian condition refusal threshold");

  auto* sweep = app.add_subcommand("sweep", "design-grid table over (k, n)");
  add_common(sweep, true);
  int skmin = 3, skmax = 5, snmin = 1, snmax = 3;
  sweep->add_option("--kmin", skmin);
  sweep->add_option("--kmax", skmax);
  sweep->add_option("--nmin", snmin);
  sweep->add_option("--nmax", snmax);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (build->parsed()) return cmd_build(opts);
    if (spectrum->parsed()) return cmd_spectrum(opts);
    if (check->parsed()) return cmd_check(opts);
    if (verify->parsed()) {
      return cmd_verify(opts, kmin, kmax, nmin, nmax, random_graphs);
    }
    if (simulate->parsed()) {
      return cmd_simulate(opts, compare, x0_fill, xf_fill, max_condition);
    }
    if (sweep->parsed()) return cmd_sweep(opts, skmin, skmax, snmin, snmax);
  } catch (const InfeasibleHorizonError& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCheckFailed;
  }
  return kExitUsage;
}
