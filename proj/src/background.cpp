#include "stogra/background.hpp"

#include <cmath>
#include <string>

#include "stogra/rng.hpp"

namespace stogra {

namespace {

// Isotropic average of (1 - n1^2)^2, the direction factor in E[e11^2] for the
// +/x mix; fixes the per-mode amplitude so E[h11(0,0)^2] = rms^2.
constexpr double kDirectionFactor = 8.0 / 15.0;

// E[w^2] for w = (f/f_ref)^alpha under log-uniform f, f_ref = sqrt(f1 f2).
double expected_square_weight(const SpectrumParams& s) {
  if (s.exponent == 0.0) return 1.0;
  const double lambda = 0.5 * std::log(s.f_max_hz / s.f_min_hz);
  const double z = 2.0 * s.exponent * lambda;
  if (std::fabs(z) < 1e-12) return 1.0;
  return std::sinh(z) / z;
}

// Orthonormal transverse pair for direction n, deterministic in n.
void transverse_frame(const std::array<double, 3>& n, std::array<double, 3>& p,
                      std::array<double, 3>& q) {
  // seed axis least aligned with n
  int axis = 0;
  double best = std::fabs(n[0]);
  for (int i = 1; i < 3; ++i) {
    if (std::fabs(n[static_cast<std::size_t>(i)]) < best) {
      best = std::fabs(n[static_cast<std::size_t>(i)]);
      axis = i;
    }
  }
  std::array<double, 3> a{0.0, 0.0, 0.0};
  a[static_cast<std::size_t>(axis)] = 1.0;
  const double an = a[0] * n[0] + a[1] * n[1] + a[2] * n[2];
  double norm = 0.0;
  for (int i = 0; i < 3; ++i) {
    auto s = static_cast<std::size_t>(i);
    p[s] = a[s] - an * n[s];
    norm += p[s] * p[s];
  }
  norm = std::sqrt(norm);
  for (auto& x : p) x /= norm;
  q[0] = n[1] * p[2] - n[2] * p[1];
  q[1] = n[2] * p[0] - n[0] * p[2];
  q[2] = n[0] * p[1] - n[1] * p[0];
}

PlaneWaveMode sample_mode(int mode_id, std::uint64_t mode_seed,
                          const SpectrumParams& spectrum, double amp_scale) {
  Rng rng(mode_seed);
  const auto n = rng.unit_vector();
  const double f = rng.log_uniform(spectrum.f_min_hz, spectrum.f_max_hz);
  const double phase0 = rng.angle();
  const double psi = rng.angle();

  std::array<double, 3> p{}, q{};
  transverse_frame(n, p, q);

  const double f_ref = std::sqrt(spectrum.f_min_hz * spectrum.f_max_hz);
  const double amp = amp_scale * std::pow(f / f_ref, spectrum.exponent);
  const double a_plus = amp * std::cos(psi);
  const double a_cross = amp * std::sin(psi);

  PlaneWaveMode mode;
  mode.mode_id = mode_id;
  mode.phase0 = phase0;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      auto si = static_cast<std::size_t>(i);
      auto sj = static_cast<std::size_t>(j);
      const double e_plus = p[si] * p[sj] - q[si] * q[sj];
      const double e_cross = p[si] * q[sj] + q[si] * p[sj];
      mode.polarization.at(i + 1, j + 1) = a_plus * e_plus + a_cross * e_cross;
    }
  }
  const double k0 = 2.0 * M_PI * f / kSpeedOfLight;  // covariant k_0, 1/m
  mode.wave_vector[0] = k0;
  for (int i = 0; i < 3; ++i)
    mode.wave_vector[i + 1] = -k0 * n[static_cast<std::size_t>(i)];
  return mode;
}

}  // namespace

void validate_spectrum(const SpectrumParams& spectrum, double h_max) {
  if (!(spectrum.f_min_hz > 0.0) || !(spectrum.f_max_hz > 0.0))
    throw ConfigError("spectrum: frequencies must be positive");
  if (!(spectrum.f_min_hz < spectrum.f_max_hz))
    throw ConfigError("spectrum: f_min must be below f_max");
  if (!(spectrum.rms >= 0.0)) throw ConfigError("spectrum: rms must be non-negative");
  if (spectrum.rms > h_max) throw ConfigError("spectrum: rms exceeds the strain cap h_max");
  if (!std::isfinite(spectrum.exponent)) throw ConfigError("spectrum: exponent must be finite");
}

void validate_mode(const PlaneWaveMode& mode, double h_max) {
  const auto& e = mode.polarization;
  const auto& k = mode.wave_vector;
  const double e_scale = std::max(e.max_abs(), 1e-300);
  double k2 = 0.0;
  for (int mu = 0; mu < 4; ++mu) k2 += k[mu] * k[mu];

  if (e.asymmetry() > 1e-12 * e_scale)
    throw SymmetryError("plane-wave mode: polarization is not symmetric");
  for (int nu = 0; nu < 4; ++nu)
    if (std::fabs(e.at(0, nu)) > 1e-12 * e_scale)
      throw MetricError("plane-wave mode: polarization has time components");
  const double trace = e.at(1, 1) + e.at(2, 2) + e.at(3, 3);
  if (std::fabs(trace) > 1e-12 * e_scale)
    throw MetricError("plane-wave mode: spatial polarization is not traceless");
  if (k[0] != 0.0) {
    // spatial propagation direction: covariant k_i = -k_0 n_i
    for (int b = 1; b < 4; ++b) {
      double contraction = 0.0;
      for (int a = 1; a < 4; ++a) contraction += (-k[a] / k[0]) * e.at(a, b);
      if (std::fabs(contraction) > 1e-12 * e_scale)
        throw MetricError("plane-wave mode: polarization is not transverse");
    }
  }
  if (std::fabs(eta_dot(k, k)) > 1e-12 * std::max(k2, 1e-300))
    throw MetricError("plane-wave mode: wave vector is not null");
  if (e.max_abs() > h_max * (1.0 + 1e-12))
    throw ConfigError("plane-wave mode: strain amplitude exceeds h_max");
}

BackgroundEnsemble sample_background(int n_modes, std::uint64_t seed,
                                     const SpectrumParams& spectrum, double h_max) {
  if (n_modes < 1) throw ConfigError("sample_background: n_modes must be >= 1");
  validate_spectrum(spectrum, h_max);

  // E[h11(0,0)^2] = (8/15) A^2 for unit weight, so A = rms * sqrt(15/8).
  const double amp_scale =
      spectrum.rms / std::sqrt(kDirectionFactor * expected_square_weight(spectrum));

  BackgroundEnsemble ensemble;
  ensemble.seed = seed;
  ensemble.spectrum = spectrum;
  ensemble.modes.reserve(static_cast<std::size_t>(n_modes));
  for (int j = 0; j < n_modes; ++j) {
    PlaneWaveMode mode =
        sample_mode(j, sub_seed(seed, static_cast<std::uint64_t>(j)), spectrum, amp_scale);
    validate_mode(mode, h_max);
    ensemble.modes.push_back(mode);
  }
  return ensemble;
}

double mode_phase(const PlaneWaveMode& mode, const FourVector& x) {
  return contract(mode.wave_vector, x) + mode.phase0;
}

double mode_angular_frequency(const PlaneWaveMode& mode) {
  return kSpeedOfLight * mode.wave_vector[0];
}

Sym4 metric_perturbation_at(const PlaneWaveMode& mode, const FourVector& x) {
  return mode.polarization.scaled(2.0 * std::cos(mode_phase(mode, x)));
}

Sym4 total_metric(const BackgroundEnsemble& ensemble, const FourVector& x) {
  Sym4 g = Sym4::minkowski();
  for (const auto& mode : ensemble.modes) g.add_scaled(mode.polarization, 2.0 * std::cos(mode_phase(mode, x)));
  return g;
}

double interval(const Sym4& metric, const FourVector& dx) {
  double ds2 = 0.0;
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = 0; nu < 4; ++nu) ds2 += metric.at(mu, nu) * dx[mu] * dx[nu];
  return ds2;
}

double harmonic_gauge_residual(const PlaneWaveMode& mode) {
  const auto& e = mode.polarization;
  const auto& k = mode.wave_vector;
  // e^m_n = eta^{mm} e_{mn}; trace e^m_m = e_00 - sum e_ii.
  const double trace = e.at(0, 0) - (e.at(1, 1) + e.at(2, 2) + e.at(3, 3));
  double residual = 0.0;
  for (int n = 0; n < 4; ++n) {
    double div = k[0] * e.at(0, n);
    for (int i = 1; i < 4; ++i) div -= k[i] * e.at(i, n);
    residual = std::max(residual, std::fabs(div - 0.5 * k[n] * trace));
  }
  return residual;
}

double field_equation_residual(const PlaneWaveMode& mode, const SourceTensor& source) {
  const double kk = eta_dot(mode.wave_vector, mode.wave_vector);
  // probe event chosen where the mode phase vanishes, so h = 2e exactly
  double residual = 0.0;
  for (int m = 0; m < 4; ++m)
    for (int n = 0; n < 4; ++n) {
      const double box_h = -kk * 2.0 * mode.polarization.at(m, n);
      residual = std::max(residual,
                          std::fabs(box_h + 16.0 * M_PI * kNewtonG * source.s_mn.at(m, n)));
    }
  return residual;
}

}  // namespace stogra
