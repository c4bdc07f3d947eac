#pragma once

#include <string>
#include <vector>

#include <Eigen/Core>

#include "lapctrl/graph.hpp"

namespace lapctrl {

// Eigenvalues ascending; eigenvectors orthonormal, column i paired with
// eigenvalue i, sign fixed so the first entry with magnitude > 1e-9 is
// positive.
struct SpectralDecomposition {
  Eigen::VectorXd eigenvalues;
  Eigen::MatrixXd eigenvectors;
};

// Cyclic Jacobi sweeps; converges when the off-diagonal Frobenius mass drops
// below 1e-14 of the matrix Frobenius norm. Deterministic for fixed input.
// Rejects matrices that are not symmetric within 1e-12 absolute.
SpectralDecomposition eigh(const Eigen::MatrixXd& m);

struct Margin {
  std::string description;
  double value = 0.0;
};

struct TheoremReport {
  std::string name;
  bool passed = false;
  std::vector<Margin> margins;
  double tolerance = 0.0;
};

// Laplacian spectrum of the k-vertex antiregular graph: {0..k} \ {⌈k/2⌉}.
std::vector<int> antiregular_spectrum(int k);

// Closed-form orthogonal eigenvector matrix of the antiregular Laplacian.
// Column j corresponds to the j-th LARGEST eigenvalue. Starting from the
// Laplacian, negate-and-shift the strict upper triangle, rebalance each
// diagonal so columns sum to zero, then drop the unique zero column and
// append the all-ones column.
Eigen::MatrixXd antiregular_eigenvectors(int k);

// I_n ⊗ L_A + sum z_i z_i^T with z_i = e_{ik} - e_{ik+⌈k/2⌉}.
Eigen::MatrixXd interconnection_laplacian(const BlockLayout& layout);

struct StructuredEigenpair {
  int index = 0;  // position in the ascending spectrum, 1-based
  double eigenvalue = 0.0;
  Eigen::VectorXd vector;  // unit length
  double residual = 0.0;   // ‖L v - λ v‖∞ after normalization
};

// Block-patterned eigenvectors of the interconnection at spectrum positions
// {1, n+1, 2n+1, ..., (k-1)n+1}: repeated blocks at the extremes, a geometric
// profile with ratio -(k-2) at position n+1, and a single leading block
// elsewhere. Residuals above `tol` are reported via `ok = false`, never
// silently dropped.
struct StructuredEigenvectorResult {
  bool ok = true;
  std::vector<StructuredEigenpair> pairs;
};
StructuredEigenvectorResult structured_eigenvectors(const BlockLayout& layout,
                                                    double tol = 1e-8);

// Weyl inequalities for eigenvalues of M1, M2 and M1 + M2.
TheoremReport check_weyl(const SpectralDecomposition& spec_a,
                         const SpectralDecomposition& spec_b,
                         const SpectralDecomposition& spec_sum,
                         double tol = 1e-8);

// Interlacing under a rank-one PSD update M + zz^T.
TheoremReport check_interlacing(const SpectralDecomposition& spec_base,
                                const SpectralDecomposition& spec_updated,
                                double tol = 1e-8);

// The antiregular eigenvalues reappear in the interconnection spectrum at
// positions nj+1, with strictly larger/smaller neighbors at nj+2 and nj.
TheoremReport check_anchoring(const BlockLayout& layout,
                              const SpectralDecomposition& spec,
                              double tol = 1e-8);

// Strictly increasing eigenvalues; reports the minimum gap and its location.
TheoremReport check_distinct(const SpectralDecomposition& spec,
                             double rel_tol = 1e-8);

// Grone-Merris majorization of the spectrum by the conjugate degree sequence;
// reports whether equality holds at every partial sum (threshold graphs).
TheoremReport check_grone_merris(const Graph& g, double tol = 1e-8);

std::string to_json(const TheoremReport& report);

// Row-major CSV with a "order=N" header line.
std::string matrix_to_csv(const Eigen::MatrixXd& m);
Eigen::MatrixXd matrix_from_csv(const std::string& text);

}  // namespace lapctrl
