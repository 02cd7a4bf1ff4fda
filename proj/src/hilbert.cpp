#include "stogra/hilbert.hpp"

#include <cmath>
#include <string>

namespace stogra {

namespace {

void check_state(const ComplexStateVector& psi, const char* which) {
  if (psi.u.size() != psi.v.size())
    throw DimensionError(std::string(which) + ": real and imaginary parts differ in length");
  if (psi.u.size() < 1) throw DimensionError(std::string(which) + ": empty state vector");
}

double operator_norm(const Eigen::MatrixXd& sym) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym, Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  return std::max(std::fabs(ev.minCoeff()), std::fabs(ev.maxCoeff()));
}

void check_square_symmetric(const Eigen::MatrixXd& m, const char* what) {
  if (m.rows() != m.cols()) throw DimensionError(std::string(what) + ": matrix is not square");
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
    throw SymmetryError(std::string(what) + ": matrix is not symmetric");
}

}  // namespace

InnerProductDecomposition decompose_inner_product(const ComplexStateVector& psi1,
                                                  const ComplexStateVector& psi2) {
  check_state(psi1, "psi1");
  check_state(psi2, "psi2");
  if (psi1.u.size() != psi2.u.size())
    throw DimensionError("decompose_inner_product: dimension mismatch between states");
  InnerProductDecomposition d;
  d.g_part = psi1.u.dot(psi2.u) + psi1.v.dot(psi2.v);
  d.omega_part = psi1.v.dot(psi2.u) - psi1.u.dot(psi2.v);
  return d;
}

double ProHilbertMetric::perturbation_ratio() const {
  const double h_norm = operator_norm(h_flat);
  if (h_norm == 0.0) return pi_perturbation.cwiseAbs().maxCoeff() == 0.0 ? 0.0 : HUGE_VAL;
  return operator_norm(pi_perturbation) / h_norm;
}

ProHilbertMetric perturbed_metric(const Eigen::MatrixXd& pi) {
  check_square_symmetric(pi, "perturbed_metric");
  ProHilbertMetric metric;
  metric.h_flat = Eigen::MatrixXd::Identity(pi.rows(), pi.cols());
  metric.pi_perturbation = pi;
  if (metric.perturbation_ratio() >= 1.0)
    throw PerturbationTooLargeError("perturbed_metric: ||Pi|| >= ||H||");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(metric.total(), Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -1e-10)
    throw MetricError("perturbed_metric: G = H + Pi is not positive semi-definite");
  return metric;
}

ProbabilityResult probability_form(const ProHilbertMetric& metric,
                                   const Eigen::VectorXd& psi) {
  if (psi.size() != metric.dim())
    throw DimensionError("probability_form: state dimension does not match metric");
  const Eigen::MatrixXd g = metric.total();
  check_square_symmetric(g, "probability_form");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -1e-10)
    throw MetricError("probability_form: metric is not positive semi-definite");
  ProbabilityResult r;
  r.value = psi.dot(g * psi);
  if (r.value < 0.0 && r.value > -1e-12) r.value = 0.0;  // PSD slack
  r.normalization_warning = r.value > 1.0 + 1e-9;
  return r;
}

double simplex_volume(const SimplexPointSet& points) {
  const auto& p = points.points;
  if (p.rows() != p.cols() || p.rows() < 1)
    throw DimensionError("simplex_volume: need exactly N points of dimension N");
  const double det = Eigen::PartialPivLU<Eigen::MatrixXd>(p).determinant();
  double factorial = 1.0;
  for (Eigen::Index k = 2; k <= p.rows(); ++k) factorial *= static_cast<double>(k);
  return std::fabs(det) / factorial;
}

}  // namespace stogra
