#include "lapctrl/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include <Eigen/Jacobi>
#include <nlohmann/json.hpp>

namespace lapctrl {

namespace {

double offdiag_norm(const Eigen::MatrixXd& a) {
  double sum = 0.0;
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      if (i != j) sum += a(i, j) * a(i, j);
    }
  }
  return std::sqrt(sum);
}

void canonicalize_sign(Eigen::MatrixXd& vectors) {
  for (Eigen::Index j = 0; j < vectors.cols(); ++j) {
    for (Eigen::Index i = 0; i < vectors.rows(); ++i) {
      if (std::abs(vectors(i, j)) > 1e-9) {
        if (vectors(i, j) < 0.0) vectors.col(j) = -vectors.col(j);
        break;
      }
    }
  }
}

}  // namespace

SpectralDecomposition eigh(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols()) {
    throw std::invalid_argument("eigh expects a square matrix");
  }
  const Eigen::Index n = m.rows();
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-12) {
    throw std::invalid_argument("eigh expects a symmetric matrix");
  }

  Eigen::MatrixXd a = 0.5 * (m + m.transpose());
  Eigen::MatrixXd v = Eigen::MatrixXd::Identity(n, n);
  const double scale = a.norm();
  const double target = 1e-14 * scale;

  constexpr int kMaxSweeps = 64;
  for (int sweep = 0; sweep < kMaxSweeps && offdiag_norm(a) > target; ++sweep) {
    for (Eigen::Index p = 0; p + 1 < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        if (a(p, q) == 0.0) continue;
        Eigen::JacobiRotation<double> rot;
        rot.makeJacobi(a, p, q);
        a.applyOnTheLeft(p, q, rot.adjoint());
        a.applyOnTheRight(p, q, rot);
        v.applyOnTheRight(p, q, rot);
      }
    }
  }

  std::vector<Eigen::Index> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&a](Eigen::Index i, Eigen::Index j) { return a(i, i) < a(j, j); });

  SpectralDecomposition dec;
  dec.eigenvalues.resize(n);
  dec.eigenvectors.resize(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    dec.eigenvalues(j) = a(order[j], order[j]);
    dec.eigenvectors.col(j) = v.col(order[j]);
  }
  canonicalize_sign(dec.eigenvectors);
  return dec;
}

std::vector<int> antiregular_spectrum(int k) {
  if (k < 2) throw std::invalid_argument("antiregular spectrum needs k >= 2");
  const int skipped = (k + 1) / 2;
  std::vector<int> values;
  for (int i = 0; i <= k; ++i) {
    if (i != skipped) values.push_back(i);
  }
  return values;
}

Eigen::MatrixXd antiregular_eigenvectors(int k) {
  const Eigen::MatrixXd t1 = laplacian(build_antiregular(k));

  Eigen::MatrixXd t2 = t1;
  for (int i = 0; i < k; ++i) {
    for (int j = i + 1; j < k; ++j) t2(i, j) = -1.0 - t1(i, j);
  }

  Eigen::MatrixXd t3 = t2;
  for (int j = 0; j < k; ++j) {
    t3(j, j) = -(t2.col(j).sum() - t2(j, j));
  }

  std::vector<int> zero_columns;
  for (int j = 0; j < k; ++j) {
    if (t3.col(j).cwiseAbs().maxCoeff() < 1e-12) zero_columns.push_back(j);
  }
  if (zero_columns.size() != 1) {
    throw std::runtime_error("expected exactly one zero column, found " +
                             std::to_string(zero_columns.size()));
  }

  Eigen::MatrixXd t4(k, k);
  int out = 0;
  for (int j = 0; j < k; ++j) {
    if (j != zero_columns.front()) t4.col(out++) = t3.col(j);
  }
  t4.col(k - 1) = Eigen::VectorXd::Ones(k);
  return t4;
}

Eigen::MatrixXd interconnection_laplacian(const BlockLayout& layout) {
  validate(layout);
  if (layout.extra_vertex) {
    throw std::invalid_argument("interconnection Laplacian has no extra vertex");
  }
  const int k = layout.k;
  const int n = layout.n;
  const Eigen::MatrixXd block = laplacian(build_antiregular(k));
  Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(k * n, k * n);
  for (int p = 0; p < n; ++p) {
    lap.block(p * k, p * k, k, k) = block;
  }
  for (int i = 1; i <= n - 1; ++i) {
    Eigen::VectorXd z = Eigen::VectorXd::Zero(k * n);
    z(i * k - 1) = 1.0;
    z(i * k + layout.kappa_upper() - 1) = -1.0;
    lap += z * z.transpose();
  }
  return lap;
}

StructuredEigenvectorResult structured_eigenvectors(const BlockLayout& layout,
                                                    double tol) {
  validate(layout);
  if (layout.k < 3) {
    throw std::invalid_argument(
        "structured eigenvectors need k >= 3 (the geometric ratio vanishes at k=2)");
  }
  const int k = layout.k;
  const int n = layout.n;
  const Eigen::MatrixXd lap = interconnection_laplacian(layout);
  const Eigen::MatrixXd t4 = antiregular_eigenvectors(k);
  const auto lambda = antiregular_spectrum(k);
  const double ratio = -(k - 2);

  StructuredEigenvectorResult result;
  for (int j = 1; j <= k; ++j) {
    const int i = (j - 1) * n + 1;  // spectrum position of the anchored value
    const Eigen::VectorXd v = t4.col(k - j);  // ascending order
    Eigen::VectorXd big = Eigen::VectorXd::Zero(k * n);
    if (i == 1 || i == (k - 1) * n + 1) {
      for (int p = 0; p < n; ++p) big.segment(p * k, k) = v;
    } else if (i == n + 1) {
      double factor = 1.0;
      for (int p = 0; p < n; ++p) {
        big.segment(p * k, k) = factor * v;
        factor *= ratio;
      }
    } else {
      big.segment(0, k) = v;
    }
    big.normalize();
    const double eigenvalue = lambda[j - 1];
    const double residual = (lap * big - eigenvalue * big).cwiseAbs().maxCoeff();
    if (residual > tol) result.ok = false;
    result.pairs.push_back({i, eigenvalue, big, residual});
  }
  return result;
}

TheoremReport check_weyl(const SpectralDecomposition& spec_a,
                         const SpectralDecomposition& spec_b,
                         const SpectralDecomposition& spec_sum, double tol) {
  const Eigen::Index k = spec_a.eigenvalues.size();
  if (spec_b.eigenvalues.size() != k || spec_sum.eigenvalues.size() != k) {
    throw std::invalid_argument("Weyl check needs equal orders");
  }
  const auto& l1 = spec_a.eigenvalues;
  const auto& l2 = spec_b.eigenvalues;
  const auto& l3 = spec_sum.eigenvalues;

  TheoremReport report{"weyl", true, {}, tol};
  for (Eigen::Index i = 1; i <= k; ++i) {
    double upper = std::numeric_limits<double>::infinity();
    for (Eigen::Index j = 0; j <= k - i; ++j) {
      upper = std::min(upper, l1(i + j - 1) + l2(k - j - 1) - l3(i - 1));
    }
    double lower = std::numeric_limits<double>::infinity();
    for (Eigen::Index j = 1; j <= i; ++j) {
      lower = std::min(lower, l3(i - 1) - l1(i - j) - l2(j - 1));
    }
    report.margins.push_back({"upper bound slack at i=" + std::to_string(i), upper});
    report.margins.push_back({"lower bound slack at i=" + std::to_string(i), lower});
    if (upper < -tol || lower < -tol) report.passed = false;
  }
  return report;
}

TheoremReport check_interlacing(const SpectralDecomposition& spec_base,
                                const SpectralDecomposition& spec_updated,
                                double tol) {
  const Eigen::Index k = spec_base.eigenvalues.size();
  if (spec_updated.eigenvalues.size() != k) {
    throw std::invalid_argument("interlacing check needs equal orders");
  }
  const auto& base = spec_base.eigenvalues;
  const auto& updated = spec_updated.eigenvalues;

  TheoremReport report{"interlacing", true, {}, tol};
  for (Eigen::Index i = 0; i < k; ++i) {
    const double up = updated(i) - base(i);
    report.margins.push_back(
        {"updated_" + std::to_string(i + 1) + " >= base_" + std::to_string(i + 1), up});
    if (up < -tol) report.passed = false;
    if (i + 1 < k) {
      const double down = base(i + 1) - updated(i);
      report.margins.push_back(
          {"base_" + std::to_string(i + 2) + " >= updated_" + std::to_string(i + 1),
           down});
      if (down < -tol) report.passed = false;
    }
  }
  return report;
}

TheoremReport check_anchoring(const BlockLayout& layout,
                              const SpectralDecomposition& spec, double tol) {
  validate(layout);
  const int k = layout.k;
  const int n = layout.n;
  if (spec.eigenvalues.size() != k * n) {
    throw std::invalid_argument("anchoring check: spectrum order mismatch");
  }
  const auto lambda = antiregular_spectrum(k);
  const auto& tilde = spec.eigenvalues;

  TheoremReport report{"anchoring", true, {}, tol};
  for (int j = 0; j < k; ++j) {
    const double anchored = tilde(n * j);  // position nj+1, 1-based
    const double gap = std::abs(anchored - lambda[j]);
    report.margins.push_back(
        {"|eig[" + std::to_string(n * j + 1) + "] - " + std::to_string(lambda[j]) + "|",
         gap});
    if (gap > tol) report.passed = false;
    if (n == 1) continue;  // no strict-gap claims for a single block
    const double above = tilde(n * j + 1) - lambda[j];
    report.margins.push_back(
        {"eig[" + std::to_string(n * j + 2) + "] above anchor " + std::to_string(lambda[j]),
         above});
    if (above <= 0.0) report.passed = false;
    if (j >= 1) {
      const double below = lambda[j] - tilde(n * j - 1);
      report.margins.push_back(
          {"eig[" + std::to_string(n * j) + "] below anchor " + std::to_string(lambda[j]),
           below});
      if (below <= 0.0) report.passed = false;
    }
  }
  return report;
}

TheoremReport check_distinct(const SpectralDecomposition& spec, double rel_tol) {
  const Eigen::Index k = spec.eigenvalues.size();
  TheoremReport report{"distinct", true, {}, rel_tol};
  if (k < 2) {
    report.margins.push_back({"trivial (order < 2)", 0.0});
    return report;
  }
  double min_gap = std::numeric_limits<double>::infinity();
  Eigen::Index at = 0;
  for (Eigen::Index i = 0; i + 1 < k; ++i) {
    const double gap = spec.eigenvalues(i + 1) - spec.eigenvalues(i);
    if (gap < min_gap) {
      min_gap = gap;
      at = i;
    }
  }
  const double threshold = rel_tol * std::max(1.0, spec.eigenvalues(k - 1));
  report.passed = min_gap > threshold;
  report.margins.push_back(
      {"min gap at index " + std::to_string(at + 1), min_gap});
  return report;
}

TheoremReport check_grone_merris(const Graph& g, double tol) {
  if (!is_connected(g)) {
    throw std::invalid_argument("Grone-Merris check expects a connected graph");
  }
  const auto spec = eigh(laplacian(g));
  const auto conj = conjugate(degree_sequence(g));
  const Eigen::Index k = spec.eigenvalues.size();

  TheoremReport report{"grone_merris", true, {}, tol};
  double eig_sum = 0.0;
  double conj_sum = 0.0;
  double max_slack = 0.0;
  for (Eigen::Index t = 1; t <= k; ++t) {
    eig_sum += spec.eigenvalues(k - t);
    conj_sum += conj.values[t - 1];
    const double slack = conj_sum - eig_sum;
    report.margins.push_back({"slack at t=" + std::to_string(t), slack});
    if (slack < -tol) report.passed = false;
    max_slack = std::max(max_slack, slack);
  }
  report.margins.push_back({"max slack (equality everywhere iff <= tol)", max_slack});
  return report;
}

std::string to_json(const TheoremReport& report) {
  nlohmann::json j;
  j["name"] = report.name;
  j["passed"] = report.passed;
  j["tolerance"] = report.tolerance;
  j["margins"] = nlohmann::json::array();
  for (const auto& m : report.margins) {
    j["margins"].push_back({{"description", m.description}, {"value", m.value}});
  }
  return j.dump(2);
}

std::string matrix_to_csv(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols()) {
    throw std::invalid_argument("matrix CSV format is for square matrices");
  }
  std::ostringstream out;
  out.precision(17);
  out << "order=" << m.rows() << "\n";
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) out << ",";
      out << m(i, j);
    }
    out << "\n";
  }
  return out.str();
}

Eigen::MatrixXd matrix_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line.rfind("order=", 0) != 0) {
    throw std::invalid_argument("matrix CSV missing 'order=N' header");
  }
  const int n = std::stoi(line.substr(6));
  Eigen::MatrixXd m(n, n);
  for (int i = 0; i < n; ++i) {
    if (!std::getline(in, line)) {
      throw std::invalid_argument("matrix CSV truncated");
    }
    std::istringstream row(line);
    std::string cell;
    for (int j = 0; j < n; ++j) {
      if (!std::getline(row, cell, ',')) {
        throw std::invalid_argument("matrix CSV row too short");
      }
      m(i, j) = std::stod(cell);
    }
  }
  return m;
}

}  // namespace lapctrl
