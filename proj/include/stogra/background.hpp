#pragma once

#include <cstdint>
#include <vector>

#include "stogra/errors.hpp"
#include "stogra/fourvec.hpp"

namespace stogra {

inline constexpr double kSpeedOfLight = 299792458.0;      // m/s
inline constexpr double kNewtonG = 6.67430e-11;           // m^3 kg^-1 s^-2
inline constexpr double kDefaultHMax = 1e-2;              // linearization cap on |e|

struct SpectrumParams {
  double f_min_hz = 1.0;
  double f_max_hz = 1.0e3;
  double exponent = 0.0;  // per-mode amplitude weight (f/f_ref)^exponent
  double rms = 1e-6;      // per-mode rms of h11 at the origin event
};

// One linearized plane wave h = 2 e cos(k_gamma x^gamma + phase0).
// Polarization is transverse-traceless in the wave frame; wave_vector holds
// covariant components with k_0 = omega/c and spatial part -k_0 * n for
// propagation direction n.
struct PlaneWaveMode {
  Sym4 polarization;
  FourVector wave_vector;
  double phase0 = 0.0;
  int mode_id = 0;
};

struct BackgroundEnsemble {
  std::vector<PlaneWaveMode> modes;
  std::uint64_t seed = 0;
  SpectrumParams spectrum;
};

// Energy-momentum of sources; only the vacuum (zero) value is simulated.
struct SourceTensor {
  Sym4 s_mn;
  static SourceTensor vacuum() { return SourceTensor{}; }
};

// Throws if the TT / null-vector / strain invariants fail.
void validate_mode(const PlaneWaveMode& mode, double h_max = kDefaultHMax);
void validate_spectrum(const SpectrumParams& spectrum, double h_max = kDefaultHMax);

// Seeded isotropic ensemble: directions uniform on the sphere, frequencies
// log-uniform, phases uniform, +/x polarization mix, amplitudes normalized so
// the per-mode rms of h11(0,0) equals spectrum.rms.
BackgroundEnsemble sample_background(int n_modes, std::uint64_t seed,
                                     const SpectrumParams& spectrum,
                                     double h_max = kDefaultHMax);

double mode_phase(const PlaneWaveMode& mode, const FourVector& x);
// Temporal angular frequency omega = c * k_0, rad/s.
double mode_angular_frequency(const PlaneWaveMode& mode);

Sym4 metric_perturbation_at(const PlaneWaveMode& mode, const FourVector& x);

// eta + sum of all mode perturbations at x, in mode order.
Sym4 total_metric(const BackgroundEnsemble& ensemble, const FourVector& x);

// ds^2 = g_{mu nu} dx^mu dx^nu (may be negative).
double interval(const Sym4& metric, const FourVector& dx);

// max_n |k_m e^m_n - (1/2) k_n e^m_m| with indices raised by eta; algebraic
// form of the harmonic-gauge condition for a plane wave. Zero for TT modes.
double harmonic_gauge_residual(const PlaneWaveMode& mode);

// max_mn |-(k.k) h_mn + 16 pi G s_mn| at the probe event where the mode phase
// vanishes (cos = 1, h = 2e). Zero for vacuum null-vector modes.
double field_equation_residual(const PlaneWaveMode& mode, const SourceTensor& source);

}  // namespace stogra
