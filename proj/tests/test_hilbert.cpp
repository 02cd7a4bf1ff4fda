#include <doctest.h>

#include <complex>

#include "stogra/hilbert.hpp"
#include "stogra/rng.hpp"

using namespace stogra;

namespace {

// Independent oracle: plain complex dot product with the first argument
// conjugated, computed with std::complex arithmetic.
std::complex<double> naive_inner_product(const ComplexStateVector& p1,
                                         const ComplexStateVector& p2) {
  std::complex<double> acc{0.0, 0.0};
  for (Eigen::Index i = 0; i < p1.u.size(); ++i) {
    const std::complex<double> a{p1.u[i], p1.v[i]};
    const std::complex<double> b{p2.u[i], p2.v[i]};
    acc += std::conj(a) * b;
  }
  return acc;
}

ComplexStateVector random_state(Rng& rng, int dim) {
  ComplexStateVector s;
  s.u.resize(dim);
  s.v.resize(dim);
  for (int i = 0; i < dim; ++i) {
    s.u[i] = rng.normal();
    s.v[i] = rng.normal();
  }
  return s;
}

Eigen::VectorXd vec(std::initializer_list<double> xs) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}

}  // namespace

TEST_SUITE("hilbert") {

TEST_CASE("self inner product of a normalized real state") {
  ComplexStateVector psi{vec({1.0}), vec({0.0})};
  const auto d = decompose_inner_product(psi, psi);
  CHECK(d.g_part == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(d.omega_part == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("real against imaginary unit vectors") {
  ComplexStateVector psi1{vec({1.0}), vec({0.0})};
  ComplexStateVector psi2{vec({0.0}), vec({1.0})};
  const auto d = decompose_inner_product(psi1, psi2);
  CHECK(d.g_part == 0.0);
  CHECK(d.omega_part == -1.0);
  // reconstruction G - i*Omega = <psi1|psi2> = i
  const auto z = naive_inner_product(psi1, psi2);
  CHECK(z.real() == doctest::Approx(d.g_part));
  CHECK(z.imag() == doctest::Approx(-d.omega_part));
}

TEST_CASE("reconstruction matches the naive complex dot product") {
  Rng rng(2024);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto p1 = random_state(rng, 8);
    const auto p2 = random_state(rng, 8);
    const auto d = decompose_inner_product(p1, p2);
    const auto z = naive_inner_product(p1, p2);
    const double scale = std::max(1.0, std::abs(z));
    CHECK(std::fabs(d.g_part - z.real()) <= 1e-12 * scale);
    CHECK(std::fabs(-d.omega_part - z.imag()) <= 1e-12 * scale);
  }
}

TEST_CASE("symmetry of G and antisymmetry of Omega") {
  Rng rng(7);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto p1 = random_state(rng, 5);
    const auto p2 = random_state(rng, 5);
    const auto fwd = decompose_inner_product(p1, p2);
    const auto rev = decompose_inner_product(p2, p1);
    CHECK(fwd.g_part == doctest::Approx(rev.g_part).epsilon(1e-12));
    CHECK(fwd.omega_part == doctest::Approx(-rev.omega_part).epsilon(1e-12));
  }
}

TEST_CASE("decomposition is bilinear in the first slot") {
  Rng rng(99);
  for (int trial = 0; trial < 100; ++trial) {
    const auto p1 = random_state(rng, 6);
    const auto p3 = random_state(rng, 6);
    const auto p2 = random_state(rng, 6);
    const double a = rng.uniform(-2.0, 2.0);
    const double b = rng.uniform(-2.0, 2.0);
    ComplexStateVector combo{a * p1.u + b * p3.u, a * p1.v + b * p3.v};
    const auto lhs = decompose_inner_product(combo, p2);
    const auto d1 = decompose_inner_product(p1, p2);
    const auto d3 = decompose_inner_product(p3, p2);
    CHECK(lhs.g_part == doctest::Approx(a * d1.g_part + b * d3.g_part).epsilon(1e-10));
    CHECK(lhs.omega_part ==
          doctest::Approx(a * d1.omega_part + b * d3.omega_part).epsilon(1e-10));
  }
}

TEST_CASE("dimension mismatch is rejected") {
  ComplexStateVector p1{vec({1.0, 0.0}), vec({0.0, 0.0})};
  ComplexStateVector p2{vec({1.0}), vec({0.0})};
  CHECK_THROWS_AS(decompose_inner_product(p1, p2), DimensionError);
  ComplexStateVector broken{vec({1.0, 0.0}), vec({0.0})};
  CHECK_THROWS_AS(decompose_inner_product(broken, broken), DimensionError);
}

TEST_CASE("probability form with flat metric is the squared norm") {
  const auto metric = perturbed_metric(Eigen::MatrixXd::Zero(4, 4));
  Eigen::VectorXd psi = vec({0.5, -0.5, 0.5, 0.5});
  CHECK(probability_form(metric, psi).value == psi.squaredNorm());
  CHECK(probability_form(metric, Eigen::VectorXd::Zero(4)).value == 0.0);
  CHECK_FALSE(probability_form(metric, psi).normalization_warning);
}

TEST_CASE("probability above one raises the normalization warning") {
  Eigen::MatrixXd pi = Eigen::MatrixXd::Zero(3, 3);
  pi(0, 0) = 0.05;
  pi(1, 1) = -0.05;
  const auto metric = perturbed_metric(pi);
  const auto p = probability_form(metric, vec({1.0, 0.0, 0.0}));
  CHECK(p.value == doctest::Approx(1.05).epsilon(1e-14));
  CHECK(p.normalization_warning);
}

TEST_CASE("non positive semi-definite metric is rejected") {
  ProHilbertMetric metric;
  metric.h_flat = Eigen::MatrixXd::Identity(2, 2);
  metric.pi_perturbation = Eigen::MatrixXd::Zero(2, 2);
  metric.pi_perturbation(0, 0) = -2.0;  // total eigenvalue -1
  CHECK_THROWS_AS(probability_form(metric, vec({1.0, 0.0})), MetricError);
}

TEST_CASE("probability form checks the state dimension") {
  const auto metric = perturbed_metric(Eigen::MatrixXd::Zero(3, 3));
  CHECK_THROWS_AS(probability_form(metric, vec({1.0, 0.0})), DimensionError);
}

TEST_CASE("perturbed metric assembly") {
  const auto flat = perturbed_metric(Eigen::MatrixXd::Zero(4, 4));
  CHECK(flat.total() == Eigen::MatrixXd::Identity(4, 4));

  const auto bumped = perturbed_metric(0.01 * Eigen::MatrixXd::Ones(2, 2));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(bumped.total());
  CHECK(es.eigenvalues()[0] == doctest::Approx(1.00).epsilon(1e-14));
  CHECK(es.eigenvalues()[1] == doctest::Approx(1.02).epsilon(1e-14));
  CHECK_FALSE(bumped.weak_perturbation_warning());

  Eigen::MatrixXd big = Eigen::MatrixXd::Zero(3, 3);
  big(1, 1) = 1.5;
  CHECK_THROWS_AS(perturbed_metric(big), PerturbationTooLargeError);

  Eigen::MatrixXd askew = Eigen::MatrixXd::Zero(2, 2);
  askew(0, 1) = 0.3;
  CHECK_THROWS_AS(perturbed_metric(askew), SymmetryError);
}

TEST_CASE("weak perturbation warning threshold") {
  Eigen::MatrixXd pi = Eigen::MatrixXd::Zero(2, 2);
  pi(0, 0) = 0.2;
  CHECK(perturbed_metric(pi).weak_perturbation_warning());
  pi(0, 0) = 0.05;
  CHECK_FALSE(perturbed_metric(pi).weak_perturbation_warning());
}

TEST_CASE("simplex volume examples") {
  Eigen::MatrixXd unit(2, 2);
  unit << 1, 0, 0, 1;
  CHECK(simplex_volume({unit}) == doctest::Approx(0.5).epsilon(1e-15));

  Eigen::MatrixXd collinear(2, 2);
  collinear << 1, 1, 2, 2;
  CHECK(simplex_volume({collinear}) == doctest::Approx(0.0).epsilon(1e-15));

  // |det diag(2,3,4)| / 3! = 24 / 6
  Eigen::MatrixXd diag = Eigen::MatrixXd::Zero(3, 3);
  diag(0, 0) = 2;
  diag(1, 1) = 3;
  diag(2, 2) = 4;
  CHECK(simplex_volume({diag}) == doctest::Approx(4.0).epsilon(1e-14));

  Eigen::MatrixXd rect(2, 3);
  rect.setZero();
  CHECK_THROWS_AS(simplex_volume({rect}), DimensionError);
}

TEST_CASE("simplex volume is permutation invariant and scales as |c|^N") {
  Rng rng(41);
  Eigen::MatrixXd pts(4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) pts(i, j) = rng.normal();
  const double base = simplex_volume({pts});

  Eigen::MatrixXd swapped = pts;
  swapped.row(0).swap(swapped.row(2));
  CHECK(simplex_volume({swapped}) == doctest::Approx(base).epsilon(1e-12));

  const double c = -1.7;
  CHECK(simplex_volume({Eigen::MatrixXd(c * pts)}) ==
        doctest::Approx(std::pow(std::fabs(c), 4) * base).epsilon(1e-12));
}

}  // TEST_SUITE
