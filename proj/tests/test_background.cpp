#include <doctest.h>

#include <complex>
#include <cstring>

#include "stogra/background.hpp"
#include "stogra/rng.hpp"

using namespace stogra;

namespace {

SpectrumParams test_spectrum(double rms = 1e-6) {
  SpectrumParams s;
  s.f_min_hz = 1.0;
  s.f_max_hz = 1000.0;
  s.exponent = 0.0;
  s.rms = rms;
  return s;
}

bool bitwise_equal(const PlaneWaveMode& a, const PlaneWaveMode& b) {
  return std::memcmp(a.polarization.m.data(), b.polarization.m.data(), 16 * 8) == 0 &&
         std::memcmp(a.wave_vector.c.data(), b.wave_vector.c.data(), 4 * 8) == 0 &&
         a.phase0 == b.phase0;
}

}  // namespace

TEST_SUITE("background") {

TEST_CASE("sampling is deterministic in the seed") {
  const auto e1 = sample_background(8, 7, test_spectrum());
  const auto e2 = sample_background(8, 7, test_spectrum());
  REQUIRE(e1.modes.size() == e2.modes.size());
  for (std::size_t j = 0; j < e1.modes.size(); ++j)
    CHECK(bitwise_equal(e1.modes[j], e2.modes[j]));
  const auto e3 = sample_background(8, 8, test_spectrum());
  CHECK_FALSE(bitwise_equal(e1.modes[0], e3.modes[0]));
}

TEST_CASE("per-mode rms of h11 at the origin matches the configured rms") {
  const double rms = 1e-6;
  const auto ens = sample_background(1000, 42, test_spectrum(rms));
  const FourVector origin{};
  double sum_sq = 0.0;
  for (const auto& mode : ens.modes) {
    const double h11 = metric_perturbation_at(mode, origin).at(1, 1);
    sum_sq += h11 * h11;
  }
  const double sample_rms = std::sqrt(sum_sq / static_cast<double>(ens.modes.size()));
  CHECK(sample_rms == doctest::Approx(rms).epsilon(0.10));
}

TEST_CASE("invalid spectra are rejected") {
  auto s = test_spectrum();
  s.f_max_hz = s.f_min_hz;
  CHECK_THROWS_AS(sample_background(1, 1, s), ConfigError);
  s = test_spectrum();
  s.rms = 0.5;  // above the default strain cap
  CHECK_THROWS_AS(sample_background(1, 1, s), ConfigError);
  CHECK_THROWS_AS(sample_background(0, 1, test_spectrum()), ConfigError);
}

TEST_CASE("every sampled mode satisfies the plane-wave invariants") {
  const auto ens = sample_background(200, 3, test_spectrum());
  for (const auto& mode : ens.modes) {
    CHECK_NOTHROW(validate_mode(mode));
    const double e_max = mode.polarization.max_abs();
    const double k_mag = std::sqrt(mode.wave_vector[0] * mode.wave_vector[0] +
                                   mode.wave_vector[1] * mode.wave_vector[1] +
                                   mode.wave_vector[2] * mode.wave_vector[2] +
                                   mode.wave_vector[3] * mode.wave_vector[3]);
    CHECK(harmonic_gauge_residual(mode) <= 1e-12 * k_mag * e_max);
    CHECK(field_equation_residual(mode, SourceTensor::vacuum()) <=
          1e-12 * k_mag * k_mag * 2.0 * e_max);
  }
}

TEST_CASE("metric perturbation closed form") {
  auto mode = sample_background(1, 11, test_spectrum()).modes[0];
  mode.phase0 = 0.0;

  const Sym4 at_origin = metric_perturbation_at(mode, FourVector{});
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      CHECK(at_origin.at(i, j) == 2.0 * mode.polarization.at(i, j));

  // phase pi/2 along the time axis kills the field
  FourVector x;
  x[0] = 0.5 * M_PI / mode.wave_vector[0];
  CHECK(metric_perturbation_at(mode, x).max_abs() <= 1e-15 * mode.polarization.max_abs());
}

TEST_CASE("metric perturbation matches a complex-exponential oracle") {
  Rng rng(5);
  const auto ens = sample_background(50, 13, test_spectrum());
  for (const auto& mode : ens.modes) {
    FourVector x;
    for (int mu = 0; mu < 4; ++mu) x[mu] = rng.uniform(-1e7, 1e7);
    const Sym4 h = metric_perturbation_at(mode, x);
    const std::complex<double> phase =
        std::exp(std::complex<double>(0.0, contract(mode.wave_vector, x) + mode.phase0));
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        const std::complex<double> z = mode.polarization.at(i, j) * phase;
        const double expected = (z + std::conj(z)).real();
        CHECK(h.at(i, j) == doctest::Approx(expected).epsilon(1e-12));
      }
  }
}

TEST_CASE("total metric reduces to eta and adds mode perturbations") {
  BackgroundEnsemble empty;
  const Sym4 eta = total_metric(empty, FourVector{});
  CHECK(eta.at(0, 0) == 1.0);
  CHECK(eta.at(1, 1) == -1.0);
  CHECK(eta.at(2, 2) == -1.0);
  CHECK(eta.at(3, 3) == -1.0);
  CHECK(eta.at(0, 1) == 0.0);

  auto ens = sample_background(1, 17, test_spectrum());
  ens.modes[0].phase0 = 0.0;
  const Sym4 g = total_metric(ens, FourVector{});
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      CHECK(g.at(i, j) ==
            doctest::Approx(Sym4::minkowski().at(i, j) + 2.0 * ens.modes[0].polarization.at(i, j)));
}

TEST_CASE("total metric agrees with unfused per-mode summation") {
  const auto ens = sample_background(100, 23, test_spectrum());
  Rng rng(29);
  FourVector x;
  for (int mu = 0; mu < 4; ++mu) x[mu] = rng.uniform(-1e6, 1e6);

  Sym4 naive = Sym4::minkowski();
  for (const auto& mode : ens.modes) {
    const Sym4 h = metric_perturbation_at(mode, x);
    for (std::size_t c = 0; c < 16; ++c) naive.m[c] += h.m[c];
  }
  const Sym4 fused = total_metric(ens, x);
  for (std::size_t c = 0; c < 16; ++c)
    CHECK(std::fabs(fused.m[c] - naive.m[c]) <= 1e-15);
}

TEST_CASE("total metric is additive over concatenated ensembles") {
  const auto a = sample_background(40, 31, test_spectrum());
  const auto b = sample_background(60, 37, test_spectrum());
  BackgroundEnsemble both = a;
  both.modes.insert(both.modes.end(), b.modes.begin(), b.modes.end());

  Rng rng(43);
  for (int trial = 0; trial < 10; ++trial) {
    FourVector x;
    for (int mu = 0; mu < 4; ++mu) x[mu] = rng.uniform(-1e6, 1e6);
    const Sym4 ga = total_metric(a, x);
    const Sym4 gb = total_metric(b, x);
    const Sym4 g = total_metric(both, x);
    for (std::size_t c = 0; c < 16; ++c) {
      const double expected = ga.m[c] + gb.m[c] - Sym4::minkowski().m[c];
      CHECK(std::fabs(g.m[c] - expected) <= 1e-14);
    }
  }
}

TEST_CASE("interval examples and special-relativistic check") {
  const Sym4 eta = Sym4::minkowski();
  FourVector dt;
  dt[0] = 1.0;
  CHECK(interval(eta, dt) == 1.0);
  FourVector null;
  null[0] = 1.0;
  null[1] = 1.0;
  CHECK(interval(eta, null) == 0.0);

  Rng rng(47);
  for (int trial = 0; trial < 1000; ++trial) {
    FourVector dx;
    for (int mu = 0; mu < 4; ++mu) dx[mu] = rng.uniform(-10.0, 10.0);
    const double expected =
        dx[0] * dx[0] - dx[1] * dx[1] - dx[2] * dx[2] - dx[3] * dx[3];
    CHECK(interval(eta, dx) == doctest::Approx(expected).epsilon(1e-13));
  }
}

TEST_CASE("interval of a perturbed metric matches an independent double loop") {
  const auto ens = sample_background(10, 53, test_spectrum());
  Rng rng(59);
  FourVector x;
  for (int mu = 0; mu < 4; ++mu) x[mu] = rng.uniform(-1e5, 1e5);
  const Sym4 g = total_metric(ens, x);
  FourVector dx;
  for (int mu = 0; mu < 4; ++mu) dx[mu] = rng.uniform(-3.0, 3.0);

  double oracle = 0.0;  // transposed iteration order
  for (int nu = 0; nu < 4; ++nu)
    for (int mu = 0; mu < 4; ++mu) oracle += g.at(mu, nu) * dx[mu] * dx[nu];
  CHECK(interval(g, dx) == doctest::Approx(oracle).epsilon(1e-14));
}

TEST_CASE("gauge residual flags an injected non-TT component") {
  PlaneWaveMode mode;  // invariant checks bypassed on purpose
  const double eps = 1e-7;
  const double k0 = 2.1e-6;
  mode.polarization.at(0, 1) = eps;
  mode.polarization.at(1, 0) = eps;
  mode.wave_vector[0] = k0;
  mode.wave_vector[1] = -k0;
  CHECK(harmonic_gauge_residual(mode) == doctest::Approx(k0 * eps).epsilon(1e-12));

  PlaneWaveMode silent;
  silent.wave_vector[0] = k0;
  silent.wave_vector[1] = -k0;
  CHECK(harmonic_gauge_residual(silent) == 0.0);
}

TEST_CASE("field equation residual for a non-null wave vector") {
  auto mode = sample_background(1, 61, test_spectrum()).modes[0];
  const double a = mode.polarization.max_abs();
  // force k.k = 1 by zeroing the spatial part and setting k0 = 1
  mode.wave_vector = FourVector{};
  mode.wave_vector[0] = 1.0;
  CHECK(field_equation_residual(mode, SourceTensor::vacuum()) ==
        doctest::Approx(2.0 * a).epsilon(1e-12));

  PlaneWaveMode zero;
  CHECK(field_equation_residual(zero, SourceTensor::vacuum()) == 0.0);
}

TEST_CASE("time-averaged per-mode strain power converges to rms^2") {
  const double rms = 1e-6;
  const auto ens = sample_background(2000, 67, test_spectrum(rms));
  Rng rng(71);
  double acc = 0.0;
  long count = 0;
  for (const auto& mode : ens.modes) {
    for (int s = 0; s < 100; ++s) {
      const double t = rng.uniform(0.0, 1000.0);  // >> slowest period
      const double h11 = metric_perturbation_at(mode, event(t, {0, 0, 0})).at(1, 1);
      acc += h11 * h11;
      ++count;
    }
  }
  const double mean_power = acc / static_cast<double>(count);
  CHECK(mean_power == doctest::Approx(rms * rms).epsilon(0.10));
}

TEST_CASE("strain cap rejects oversized modes") {
  PlaneWaveMode mode;
  mode.wave_vector[0] = 1.0;
  mode.wave_vector[1] = -1.0;
  mode.polarization.at(2, 2) = 0.5;
  mode.polarization.at(3, 3) = -0.5;
  CHECK_THROWS_AS(validate_mode(mode, 1e-2), ConfigError);
  CHECK_NOTHROW(validate_mode(mode, 0.6));
}

}  // TEST_SUITE
