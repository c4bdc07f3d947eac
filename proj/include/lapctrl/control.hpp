#pragma once

#include <stdexcept>
#include <string>

#include <Eigen/Core>

#include "lapctrl/graph.hpp"
#include "lapctrl/spectral.hpp"

namespace lapctrl {

// The Gramian at the requested horizon is too ill-conditioned to steer.
struct InfeasibleHorizonError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ControllabilityVerdict {
  bool controllable = false;
  bool distinct_eigenvalues = false;
  double min_abs_projection = 0.0;  // min_i |v_i^T b|
  int witness = 0;  // 1-based offending eigenvector index, 0 if none
};

// PBH test for (-L, b) with b = e_{input_vertex}. A repeated Laplacian
// eigenvalue is immediately uncontrollable with a single input: a
// two-dimensional eigenspace always contains a vector orthogonal to b.
ControllabilityVerdict pbh_controllable(const ControlSetup& setup,
                                        double tol = 1e-8);

// Rank of [b, Lb, ..., L^{v-1}b] by column-pivoted orthogonalization.
// Guarded to v <= 12 vertices for conditioning.
bool kalman_rank_oracle(const ControlSetup& setup);

// Appends a vertex to the input vertex, moves the input there, and checks
// both the PBH verdict and the appended-entry condition on every eigenvector.
TheoremReport verify_append_vertex(const ControlSetup& setup, double tol = 1e-8);

struct GramianResult {
  double horizon = 0.0;
  Eigen::MatrixXd gramian;
  double condition = 0.0;
};

// Controllability Gramian of (-L, b) over [0, t1], closed form in the
// Laplacian eigenbasis.
GramianResult gramian(const ControlSetup& setup, double t1);

struct TrajectoryResult {
  Eigen::VectorXd times;
  Eigen::MatrixXd states;   // one column per grid point
  Eigen::VectorXd inputs;
  double energy = 0.0;           // trapezoidal integral of u^2
  double energy_gramian = 0.0;   // eta^T W^{-1} eta (zero for autonomous runs)
  double terminal_error = 0.0;   // ‖x(t1) - x_f‖∞
  double gramian_condition = 0.0;
};

// Minimum-energy steering from x0 to xf by time t1 on a uniform grid of
// `steps` intervals. State propagation is exact in the eigenbasis; the input
// convolution uses composite Simpson on a refined grid. Throws
// InfeasibleHorizonError when cond(W) exceeds `max_condition`. Callers that
// deliberately run in the degraded regime (e.g. short-horizon energy
// comparisons) may raise the bound; the attained condition is always
// reported in the result.
TrajectoryResult min_energy_control(const ControlSetup& setup,
                                    const Eigen::VectorXd& x0,
                                    const Eigen::VectorXd& xf, double t1,
                                    int steps, double max_condition = 1e12);

// Zero-input consensus dynamics x' = -Lx, exact in the eigenbasis.
TrajectoryResult simulate_autonomous(const Graph& g, const Eigen::VectorXd& x0,
                                     double t1, int steps);

std::string to_json(const ControllabilityVerdict& verdict);

// "t,x1,...,xN,u" rows, one per grid point.
std::string trajectory_to_csv(const TrajectoryResult& result);

}  // namespace lapctrl
