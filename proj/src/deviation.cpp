#include "stogra/deviation.hpp"

#include <cmath>

#include "stogra/rng.hpp"
#include "stogra/stats.hpp"

namespace stogra {

TidalSignal constant_tidal(double r_value) {
  return {[r_value](double) { return r_value; }, "constant R"};
}

TidalSignal tidal_from_background(const BackgroundEnsemble& ensemble,
                                  const std::array<double, 3>& pos_m) {
  return {[ensemble, pos_m](double t) { return riemann_from_background(ensemble, t, pos_m); },
          "stochastic background"};
}

StochasticForcing StochasticForcing::draw(double sigma, std::uint64_t seed) {
  if (sigma < 0.0) throw DomainError("forcing sigma must be non-negative");
  StochasticForcing f;
  f.sigma = sigma;
  f.rng_seed = seed;
  f.value = sigma == 0.0 ? 0.0 : sigma * Rng(seed).normal();
  return f;
}

double riemann_from_background(const BackgroundEnsemble& ensemble, double t,
                               const std::array<double, 3>& pos_m) {
  const FourVector x = event(t, pos_m);
  double r = 0.0;
  for (const auto& mode : ensemble.modes) {
    // -(1/2c^2) d2/dt2 [2 e11 cos(w t + ...)] = e11 (w/c)^2 cos = e11 k0^2 cos
    const double k0 = mode.wave_vector[0];
    r += mode.polarization.at(1, 1) * k0 * k0 * std::cos(mode_phase(mode, x));
  }
  return r;
}

namespace {

double checked_r(const TidalSignal& tidal, double t, double dt) {
  const double r = tidal.sampler(t);
  if (dt * kSpeedOfLight * std::sqrt(std::fabs(r)) >= 0.1)
    throw StepSizeError("integrate_deviation: dt*sqrt(c^2 |R|) >= 0.1, refine the step");
  return r;
}

}  // namespace

std::vector<DeviationState> integrate_deviation(const TidalSignal& tidal,
                                                const StochasticForcing& forcing,
                                                const DeviationState& initial,
                                                double dt, int steps) {
  if (!(dt > 0.0)) throw StepSizeError("integrate_deviation: dt must be positive");
  if (steps < 1) throw DomainError("integrate_deviation: steps must be >= 1");
  if (!std::isfinite(initial.ell) || !std::isfinite(initial.ell_rate))
    throw DomainError("integrate_deviation: initial state must be finite");

  const double c2 = kSpeedOfLight * kSpeedOfLight;
  const double f = forcing.sigma == 0.0 ? 0.0 : forcing.value;

  std::vector<DeviationState> out;
  out.reserve(static_cast<std::size_t>(steps) + 1);
  out.push_back(initial);

  double ell = initial.ell;
  double rate = initial.ell_rate;
  double r_begin = checked_r(tidal, initial.tau, dt);
  for (int i = 0; i < steps; ++i) {
    const double t = initial.tau + dt * i;
    const double r_mid = checked_r(tidal, t + 0.5 * dt, dt);
    const double r_end = checked_r(tidal, t + dt, dt);

    const auto accel = [&](double r, double l) { return -c2 * r * l + f; };

    const double k1l = rate;
    const double k1v = accel(r_begin, ell);
    const double k2l = rate + 0.5 * dt * k1v;
    const double k2v = accel(r_mid, ell + 0.5 * dt * k1l);
    const double k3l = rate + 0.5 * dt * k2v;
    const double k3v = accel(r_mid, ell + 0.5 * dt * k2l);
    const double k4l = rate + dt * k3v;
    const double k4v = accel(r_end, ell + dt * k3l);

    ell += dt / 6.0 * (k1l + 2.0 * k2l + 2.0 * k3l + k4l);
    rate += dt / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
    r_begin = r_end;

    out.push_back({ell, rate, initial.tau + dt * (i + 1)});
  }
  return out;
}

double analytic_oscillator(double r0, double ell0, double t) {
  if (!(r0 > 0.0)) throw DomainError("analytic_oscillator: R0 must be positive");
  return ell0 * std::cos(kSpeedOfLight * std::sqrt(r0) * t);
}

PhaseTrace accumulate_phase(const TidalSignal& tidal, std::span<const double> t_grid,
                            PhaseMode mode) {
  if (t_grid.empty()) throw GridError("accumulate_phase: empty time grid");
  if (t_grid[0] != 0.0) throw GridError("accumulate_phase: grid must start at t = 0");
  for (std::size_t i = 1; i < t_grid.size(); ++i)
    if (!(t_grid[i] > t_grid[i - 1]))
      throw GridError("accumulate_phase: grid must be strictly increasing");

  PhaseTrace trace;
  trace.mode = mode;
  trace.times.assign(t_grid.begin(), t_grid.end());
  trace.phi.resize(t_grid.size());

  std::size_t clipped = 0;
  std::vector<double> omega(t_grid.size());
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    const double r = tidal.sampler(t_grid[i]);
    if (r < 0.0) ++clipped;
    omega[i] = kSpeedOfLight * std::sqrt(std::max(r, 0.0));
  }
  trace.clipped_fraction = static_cast<double>(clipped) / static_cast<double>(t_grid.size());

  trace.phi[0] = 0.0;
  for (std::size_t i = 1; i < t_grid.size(); ++i) {
    if (mode == PhaseMode::Literal) {
      trace.phi[i] = omega[i] * t_grid[i];
    } else {
      trace.phi[i] = trace.phi[i - 1] +
                     0.5 * (omega[i] + omega[i - 1]) * (t_grid[i] - t_grid[i - 1]);
    }
  }
  return trace;
}

namespace {

std::vector<double> window_grid(double window_s, int grid_steps) {
  if (!(window_s > 0.0)) throw GridError("phase window must be positive");
  if (grid_steps < 1) throw GridError("phase grid needs at least one step");
  std::vector<double> grid(static_cast<std::size_t>(grid_steps) + 1);
  for (std::size_t i = 0; i < grid.size(); ++i)
    grid[i] = window_s * static_cast<double>(i) / static_cast<double>(grid_steps);
  return grid;
}

double end_phase_for_seed(const BackgroundEnsemble& tmpl, std::uint64_t seed,
                          std::span<const double> grid,
                          const std::array<double, 3>& pos_m) {
  const auto bg = sample_background(static_cast<int>(tmpl.modes.size()), seed, tmpl.spectrum);
  const auto trace = accumulate_phase(tidal_from_background(bg, pos_m), grid);
  return trace.phi.back();
}

PhaseStatistics stats_from_phases(std::span<const double> phases) {
  PhaseStatistics st;
  st.n_realizations = static_cast<int>(phases.size());
  const MeanVar mv = mean_variance(phases);
  st.mean = mv.mean;
  st.variance = mv.variance;
  st.kuiper_v = kuiper_v(phases);
  return st;
}

}  // namespace

std::vector<double> end_window_phases(const BackgroundEnsemble& template_ensemble,
                                      double window_s, int n_realizations,
                                      std::uint64_t seed, int grid_steps,
                                      const std::array<double, 3>& pos_m) {
  if (n_realizations < 1) throw SampleSizeError("end_window_phases: need n >= 1");
  const auto grid = window_grid(window_s, grid_steps);
  std::vector<double> phases(static_cast<std::size_t>(n_realizations));
  for (std::size_t r = 0; r < phases.size(); ++r)
    phases[r] = end_phase_for_seed(template_ensemble, sub_seed(seed, r), grid, pos_m);
  return phases;
}

PhaseStatistics phase_statistics(const BackgroundEnsemble& template_ensemble,
                                 double window_s, int n_realizations,
                                 std::uint64_t seed, int grid_steps) {
  if (n_realizations < 2) throw SampleSizeError("phase_statistics: need n >= 2");
  return stats_from_phases(
      end_window_phases(template_ensemble, window_s, n_realizations, seed, grid_steps));
}

PhaseStatistics phase_statistics(const BackgroundEnsemble& template_ensemble,
                                 double window_s,
                                 std::span<const std::uint64_t> realization_seeds,
                                 int grid_steps) {
  if (realization_seeds.size() < 2)
    throw SampleSizeError("phase_statistics: need n >= 2");
  const auto grid = window_grid(window_s, grid_steps);
  std::vector<double> phases(realization_seeds.size());
  for (std::size_t r = 0; r < phases.size(); ++r)
    phases[r] = end_phase_for_seed(template_ensemble, realization_seeds[r], grid, {0, 0, 0});
  return stats_from_phases(phases);
}

}  // namespace stogra
