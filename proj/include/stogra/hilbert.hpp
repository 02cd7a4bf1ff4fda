#pragma once

#include <Eigen/Dense>

#include "stogra/errors.hpp"

namespace stogra {

// State split into real and imaginary parts, psi = u + i v.
struct ComplexStateVector {
  Eigen::VectorXd u;
  Eigen::VectorXd v;
};

// Hermitian inner product <psi1|psi2> = g_part - i * omega_part.
struct InnerProductDecomposition {
  double g_part = 0.0;
  double omega_part = 0.0;
};

InnerProductDecomposition decompose_inner_product(const ComplexStateVector& psi1,
                                                  const ComplexStateVector& psi2);

// State-space metric G = H + Pi with H the flat (identity) base metric and Pi
// a weak symmetric perturbation.
struct ProHilbertMetric {
  Eigen::MatrixXd h_flat;
  Eigen::MatrixXd pi_perturbation;

  Eigen::MatrixXd total() const { return h_flat + pi_perturbation; }
  Eigen::Index dim() const { return h_flat.rows(); }

  // Operator-norm ratio ||Pi|| / ||H||.
  double perturbation_ratio() const;
  bool weak_perturbation_warning() const { return perturbation_ratio() > 0.1; }
};

// Assembles G = I + pi and validates symmetry, weakness and positivity.
ProHilbertMetric perturbed_metric(const Eigen::MatrixXd& pi);

struct ProbabilityResult {
  double value = 0.0;
  // P exceeded 1 + 1e-9; the constraint is on inputs, so this is surfaced
  // rather than silently enforced.
  bool normalization_warning = false;
};

ProbabilityResult probability_form(const ProHilbertMetric& metric,
                                   const Eigen::VectorXd& psi);

// N points of dimension N, one per row.
struct SimplexPointSet {
  Eigen::MatrixXd points;
};

// V_N = |det(points)| / N!; nonzero value flags a curved configuration.
double simplex_volume(const SimplexPointSet& points);

}  // namespace stogra
