#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "stogra/background.hpp"
#include "stogra/errors.hpp"

namespace stogra {

struct SlitGeometry {
  double slit_separation = 1e-6;     // m
  double screen_distance = 1.0;      // m
  double de_broglie_wavelength = 5e-11;  // m
  int screen_points = 2001;
  double screen_half_width = 2.5e-4;  // m

  static SlitGeometry defaults() { return {}; }
};

void validate_geometry(const SlitGeometry& geometry);

// Fringe spacing lambda * L / d of the small-angle pattern.
double fringe_period(const SlitGeometry& geometry);

enum class PhaseNoiseKind { Gaussian, Uniform, FromBackground };

// Relative stochastic phase between the two paths, one draw per realization.
// For Gaussian, sigma_rel is the standard deviation; for Uniform it is the
// half-width a of the symmetric interval (-a, a). FromBackground accumulates
// the deviation-dynamics phase at the two slit positions over window_s.
struct PathPhaseModel {
  PhaseNoiseKind kind = PhaseNoiseKind::Gaussian;
  double sigma_rel = 0.0;
  std::optional<BackgroundEnsemble> background;
  double window_s = 1.0;
  int grid_steps = 64;

  static PathPhaseModel gaussian(double sigma) { return {PhaseNoiseKind::Gaussian, sigma, {}, 1.0, 64}; }
  static PathPhaseModel uniform(double half_width) { return {PhaseNoiseKind::Uniform, half_width, {}, 1.0, 64}; }
  static PathPhaseModel from_background(BackgroundEnsemble ensemble, double window_s,
                                        int grid_steps = 64);
  bool symmetric() const { return kind != PhaseNoiseKind::FromBackground; }
};

struct IntensityProfile {
  std::vector<double> positions;  // m
  std::vector<double> intensity;  // arbitrary units, >= 0
  long n_realizations = 0;
  std::uint64_t seed = 0;
  SlitGeometry geometry;
};

double path_length(const SlitGeometry& geometry, int slit_index, double screen_x);

// (1/sqrt(2)) * exp(i * (2 pi / lambda) * path_length + i * extra_phase).
std::complex<double> path_amplitude(const SlitGeometry& geometry, int slit_index,
                                    double screen_x, double extra_phase);

// Ensemble-averaged |A1 + A2 e^{i dPhi}|^2 over n realizations. Symmetric
// distributions use antithetic +/- pairing (odd n rounded up to even, echoed
// in the result). Deterministic in seed and independent of worker count.
IntensityProfile two_slit_intensity(const SlitGeometry& geometry,
                                    const PathPhaseModel& phase_model,
                                    long n_realizations, std::uint64_t seed,
                                    int workers = 1);

IntensityProfile single_slit_control(const SlitGeometry& geometry, int slit_index);

// (Imax - Imin)/(Imax + Imin) over the central two-fringe-period window.
double visibility(const IntensityProfile& profile);

std::vector<std::pair<double, double>> visibility_curve(const SlitGeometry& geometry,
                                                        std::span<const double> sigmas,
                                                        long n_realizations,
                                                        std::uint64_t seed,
                                                        int workers = 1);

}  // namespace stogra
