#include "lapctrl/control.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include <Eigen/Cholesky>
#include <nlohmann/json.hpp>

namespace lapctrl {

namespace {

Eigen::VectorXd input_vector(const ControlSetup& setup) {
  if (setup.input_vertex < 1 || setup.input_vertex > setup.graph.num_vertices) {
    throw std::invalid_argument("input vertex out of range");
  }
  Eigen::VectorXd b = Eigen::VectorXd::Zero(setup.graph.num_vertices);
  b(setup.input_vertex - 1) = 1.0;
  return b;
}

// (1 - e^{-s t}) / s, continuous at s = 0.
double gramian_kernel(double s, double t) {
  if (s > 1e-12) return (1.0 - std::exp(-s * t)) / s;
  return t;
}

}  // namespace

ControllabilityVerdict pbh_controllable(const ControlSetup& setup, double tol) {
  if (!is_connected(setup.graph)) {
    throw std::invalid_argument("PBH test expects a connected graph");
  }
  const auto spec = eigh(laplacian(setup.graph));
  const Eigen::Index n = spec.eigenvalues.size();
  const double scale = std::max(1.0, spec.eigenvalues(n - 1));

  ControllabilityVerdict verdict;
  verdict.distinct_eigenvalues = true;
  for (Eigen::Index i = 0; i + 1 < n; ++i) {
    if (spec.eigenvalues(i + 1) - spec.eigenvalues(i) <= tol * scale) {
      verdict.distinct_eigenvalues = false;
      verdict.witness = static_cast<int>(i) + 1;
      break;
    }
  }

  const int row = setup.input_vertex - 1;
  double min_proj = std::numeric_limits<double>::infinity();
  int min_at = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double proj = std::abs(spec.eigenvectors(row, i));
    if (proj < min_proj) {
      min_proj = proj;
      min_at = static_cast<int>(i) + 1;
    }
  }
  verdict.min_abs_projection = min_proj;
  if (!verdict.distinct_eigenvalues) {
    verdict.controllable = false;
  } else if (min_proj > tol) {
    verdict.controllable = true;
  } else {
    verdict.controllable = false;
    verdict.witness = min_at;
  }
  return verdict;
}

bool kalman_rank_oracle(const ControlSetup& setup) {
  const int v = setup.graph.num_vertices;
  if (v > 12) {
    throw std::invalid_argument("Kalman oracle is guarded to <= 12 vertices");
  }
  const Eigen::MatrixXd lap = laplacian(setup.graph);

  // Krylov dimension of (L, b) by incremental orthogonalization: the raw
  // power basis [b, Lb, ..., L^{v-1}b] is too ill-conditioned to rank-reveal
  // at v = 12, but orthogonalizing each new direction as it is generated
  // computes the same rank stably.
  Eigen::MatrixXd basis(v, v);
  basis.col(0) = input_vector(setup);
  int rank = 1;
  while (rank < v) {
    Eigen::VectorXd w = lap * basis.col(rank - 1);
    const double scale = std::max(w.norm(), 1.0);
    for (int pass = 0; pass < 2; ++pass) {
      for (int j = 0; j < rank; ++j) {
        w -= basis.col(j).dot(w) * basis.col(j);
      }
    }
    if (w.norm() <= 1e-7 * scale) break;
    basis.col(rank++) = w.normalized();
  }
  return rank == v;
}

TheoremReport verify_append_vertex(const ControlSetup& setup, double tol) {
  const auto base = pbh_controllable(setup, tol);
  if (!base.controllable) {
    throw std::invalid_argument("verify_append_vertex expects a controllable setup");
  }
  const Graph appended = append_vertex(setup.graph, setup.input_vertex);
  const ControlSetup moved{appended, appended.num_vertices};
  const auto verdict = pbh_controllable(moved, tol);

  const auto spec = eigh(laplacian(appended));
  const double min_entry =
      spec.eigenvectors.row(appended.num_vertices - 1).cwiseAbs().minCoeff();

  TheoremReport report{"append_vertex", verdict.controllable && min_entry > tol,
                       {}, tol};
  report.margins.push_back({"PBH min |v^T b| after append", verdict.min_abs_projection});
  report.margins.push_back({"min |eigenvector entry| at appended vertex", min_entry});
  return report;
}

GramianResult gramian(const ControlSetup& setup, double t1) {
  if (t1 <= 0.0) throw std::invalid_argument("horizon must be positive");
  const auto spec = eigh(laplacian(setup.graph));
  const Eigen::Index n = spec.eigenvalues.size();
  const Eigen::VectorXd c = spec.eigenvectors.transpose() * input_vector(setup);

  Eigen::MatrixXd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      m(i, j) = c(i) * c(j) *
                gramian_kernel(spec.eigenvalues(i) + spec.eigenvalues(j), t1);
    }
  }
  Eigen::MatrixXd w = spec.eigenvectors * m * spec.eigenvectors.transpose();
  w = 0.5 * (w + w.transpose());

  const auto wspec = eigh(w);
  const double lo = wspec.eigenvalues(0);
  const double hi = wspec.eigenvalues(n - 1);
  const double condition =
      lo > 0.0 ? hi / lo : std::numeric_limits<double>::infinity();
  return GramianResult{t1, std::move(w), condition};
}

TrajectoryResult min_energy_control(const ControlSetup& setup,
                                    const Eigen::VectorXd& x0,
                                    const Eigen::VectorXd& xf, double t1,
                                    int steps, double max_condition) {
  if (steps < 100) throw std::invalid_argument("need at least 100 grid steps");
  const int n = setup.graph.num_vertices;
  if (x0.size() != n || xf.size() != n) {
    throw std::invalid_argument("state dimension mismatch");
  }

  const auto gram = gramian(setup, t1);
  if (!(gram.condition < max_condition)) {
    std::ostringstream msg;
    msg << "Gramian condition " << gram.condition << " at horizon " << t1
        << " exceeds " << max_condition << "; steering infeasible";
    throw InfeasibleHorizonError(msg.str());
  }

  const auto spec = eigh(laplacian(setup.graph));
  const Eigen::VectorXd& lambda = spec.eigenvalues;
  const Eigen::MatrixXd& v = spec.eigenvectors;
  const Eigen::VectorXd c = v.transpose() * input_vector(setup);

  const Eigen::VectorXd y0 = v.transpose() * x0;
  Eigen::VectorXd eta = xf - v * (Eigen::exp(-lambda.array() * t1) * y0.array()).matrix();
  const Eigen::VectorXd zeta = Eigen::LDLT<Eigen::MatrixXd>(gram.gramian).solve(eta);
  const double energy_gramian = eta.dot(zeta);
  const Eigen::VectorXd zhat = v.transpose() * zeta;

  // u(t) = b^T e^{A(t1-t)} zeta, with A = -L diagonalized by V
  const auto input_at = [&](double t) {
    double u = 0.0;
    for (int i = 0; i < n; ++i) {
      u += c(i) * std::exp(-lambda(i) * (t1 - t)) * zhat(i);
    }
    return u;
  };

  TrajectoryResult result;
  result.times.resize(steps + 1);
  result.states.resize(n, steps + 1);
  result.inputs.resize(steps + 1);

  const double dt = t1 / steps;
  constexpr int kRefine = 20;  // Simpson subintervals per grid step (even)
  Eigen::VectorXd y = y0;
  result.times(0) = 0.0;
  result.states.col(0) = x0;
  result.inputs(0) = input_at(0.0);

  const double h = dt / kRefine;
  for (int step = 0; step < steps; ++step) {
    const double t_next = (step + 1) * dt;
    Eigen::VectorXd conv = Eigen::VectorXd::Zero(n);
    for (int r = 0; r <= kRefine; ++r) {
      const double s = t_next - dt + r * h;
      const double weight = (r == 0 || r == kRefine) ? 1.0 : (r % 2 ? 4.0 : 2.0);
      const double u = input_at(s);
      for (int i = 0; i < n; ++i) {
        conv(i) += weight * std::exp(-lambda(i) * (t_next - s)) * u;
      }
    }
    conv *= h / 3.0;
    for (int i = 0; i < n; ++i) {
      y(i) = std::exp(-lambda(i) * dt) * y(i) + c(i) * conv(i);
    }
    result.times(step + 1) = t_next;
    result.states.col(step + 1) = v * y;
    result.inputs(step + 1) = input_at(t_next);
  }

  double energy = 0.0;
  for (int step = 0; step < steps; ++step) {
    energy += 0.5 * dt *
              (result.inputs(step) * result.inputs(step) +
               result.inputs(step + 1) * result.inputs(step + 1));
  }
  result.energy = energy;
  result.energy_gramian = energy_gramian;
  result.terminal_error = (result.states.col(steps) - xf).cwiseAbs().maxCoeff();
  result.gramian_condition = gram.condition;
  return result;
}

TrajectoryResult simulate_autonomous(const Graph& g, const Eigen::VectorXd& x0,
                                     double t1, int steps) {
  if (t1 <= 0.0) throw std::invalid_argument("horizon must be positive");
  if (steps < 1) throw std::invalid_argument("need at least one grid step");
  if (x0.size() != g.num_vertices) {
    throw std::invalid_argument("state dimension mismatch");
  }
  const auto spec = eigh(laplacian(g));
  const Eigen::VectorXd y0 = spec.eigenvectors.transpose() * x0;

  TrajectoryResult result;
  result.times.resize(steps + 1);
  result.states.resize(g.num_vertices, steps + 1);
  result.inputs = Eigen::VectorXd::Zero(steps + 1);
  for (int m = 0; m <= steps; ++m) {
    const double t = t1 * m / steps;
    result.times(m) = t;
    result.states.col(m) =
        spec.eigenvectors *
        (Eigen::exp(-spec.eigenvalues.array() * t) * y0.array()).matrix();
  }
  return result;
}

std::string to_json(const ControllabilityVerdict& verdict) {
  nlohmann::json j;
  j["controllable"] = verdict.controllable;
  j["distinct_eigenvalues"] = verdict.distinct_eigenvalues;
  j["min_abs_projection"] = verdict.min_abs_projection;
  j["witness"] = verdict.witness;
  return j.dump(2);
}

std::string trajectory_to_csv(const TrajectoryResult& result) {
  std::ostringstream out;
  out.precision(12);
  out << "t";
  for (Eigen::Index i = 0; i < result.states.rows(); ++i) out << ",x" << (i + 1);
  out << ",u\n";
  for (Eigen::Index m = 0; m < result.times.size(); ++m) {
    out << result.times(m);
    for (Eigen::Index i = 0; i < result.states.rows(); ++i) {
      out << "," << result.states(i, m);
    }
    out << "," << result.inputs(m) << "\n";
  }
  return out.str();
}

}  // namespace lapctrl
