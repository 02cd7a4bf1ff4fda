#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "stogra/background.hpp"
#include "stogra/errors.hpp"

namespace stogra {

// Separation of a test-particle pair along the single excited axis.
struct DeviationState {
  double ell = 0.0;       // m
  double ell_rate = 0.0;  // m/s
  double tau = 0.0;       // s
};

// Time-dependent tidal curvature component R^1_010(t), units 1/m^2.
struct TidalSignal {
  std::function<double(double)> sampler;
  std::string description;
};

TidalSignal constant_tidal(double r_value);
TidalSignal tidal_from_background(const BackgroundEnsemble& ensemble,
                                  const std::array<double, 3>& pos_m = {0, 0, 0});

// Constant-in-realization stochastic forcing term, m/s^2.
struct StochasticForcing {
  double value = 0.0;
  std::uint64_t rng_seed = 0;
  double sigma = 0.0;

  static StochasticForcing none() { return {}; }
  // Zero-mean Gaussian draw, constant within the realization.
  static StochasticForcing draw(double sigma, std::uint64_t seed);
};

enum class PhaseMode { Literal, Integral };

struct PhaseTrace {
  std::vector<double> times;
  std::vector<double> phi;
  PhaseMode mode = PhaseMode::Integral;
  // Fraction of grid nodes where R < 0 forced the omega = c*sqrt(R) clip.
  double clipped_fraction = 0.0;
};

// Analytic -(1/2c^2) * d2 h11/dt2 summed over modes; each plane wave
// contributes e11 * k0^2 * cos(phase) in closed form.
double riemann_from_background(const BackgroundEnsemble& ensemble, double t,
                               const std::array<double, 3>& pos_m = {0, 0, 0});

// Classic fixed-step RK4 on l'' = -c^2 R(t) l + F. Returns steps+1 states
// including the initial one. Throws StepSizeError when dt*c*sqrt(|R|) >= 0.1
// at any sampled time.
std::vector<DeviationState> integrate_deviation(const TidalSignal& tidal,
                                                const StochasticForcing& forcing,
                                                const DeviationState& initial,
                                                double dt, int steps);

// l0 * cos(c*sqrt(R0) * t); R0 must be positive.
double analytic_oscillator(double r0, double ell0, double t);

// Phase from omega(t) = c*sqrt(max(R(t), 0)). Integral mode accumulates by
// trapezoid rule; literal mode evaluates omega(t)*t directly. Grid must be
// strictly increasing and start at 0.
PhaseTrace accumulate_phase(const TidalSignal& tidal, std::span<const double> t_grid,
                            PhaseMode mode = PhaseMode::Integral);

struct PhaseStatistics {
  double mean = 0.0;
  double variance = 0.0;  // unbiased
  double kuiper_v = 0.0;  // circular uniformity of phi mod 2*pi
  int n_realizations = 0;
};

// End-of-window phase statistics over independently re-drawn backgrounds.
// The template ensemble supplies mode count and spectrum; realization r uses
// sub_seed(seed, r).
PhaseStatistics phase_statistics(const BackgroundEnsemble& template_ensemble,
                                 double window_s, int n_realizations,
                                 std::uint64_t seed, int grid_steps = 256);

// Same, with caller-supplied per-realization seeds (e.g. to force duplicates).
PhaseStatistics phase_statistics(const BackgroundEnsemble& template_ensemble,
                                 double window_s,
                                 std::span<const std::uint64_t> realization_seeds,
                                 int grid_steps = 256);

// Per-realization end-of-window phases, the raw samples behind the statistics.
std::vector<double> end_window_phases(const BackgroundEnsemble& template_ensemble,
                                      double window_s, int n_realizations,
                                      std::uint64_t seed, int grid_steps = 256,
                                      const std::array<double, 3>& pos_m = {0, 0, 0});

}  // namespace stogra
