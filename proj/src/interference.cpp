#include "stogra/interference.hpp"

#include <atomic>
#include <cmath>
#include <thread>

#include "stogra/deviation.hpp"
#include "stogra/rng.hpp"

namespace stogra {

namespace {

constexpr long kChunk = 4096;  // realizations per work unit, fixed so results
                               // do not depend on the worker count

// Dynamic chunk scheduling over a fixed decomposition; fn(chunk_index).
void run_chunks(long n_chunks, int workers, const std::function<void(long)>& fn) {
  workers = std::max(1, workers);
  if (workers == 1 || n_chunks <= 1) {
    for (long c = 0; c < n_chunks; ++c) fn(c);
    return;
  }
  std::atomic<long> next{0};
  auto worker = [&] {
    for (;;) {
      const long c = next.fetch_add(1);
      if (c >= n_chunks) return;
      fn(c);
    }
  };
  std::vector<std::thread> pool;
  const int n_threads = static_cast<int>(std::min<long>(workers, n_chunks));
  pool.reserve(static_cast<std::size_t>(n_threads));
  for (int w = 0; w < n_threads; ++w) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
}

double slit_offset(const SlitGeometry& g, int slit_index) {
  if (slit_index != 1 && slit_index != 2)
    throw DomainError("slit index must be 1 or 2");
  return slit_index == 1 ? 0.5 * g.slit_separation : -0.5 * g.slit_separation;
}

struct PhaseMoments {
  double mean_cos = 0.0;
  double mean_sin = 0.0;
  long n_used = 0;       // realizations actually averaged
  long n_distinct = 0;   // independent draws behind them
  double var_cos = 0.0;  // unbiased variance of the distinct cos values
};

// First circular moments of dPhi across realizations. Symmetric models use
// antithetic pairs (+d, -d), which cancels the sine component exactly.
PhaseMoments phase_moments(const PathPhaseModel& model, double slit_separation, long n,
                           std::uint64_t seed, int workers) {
  PhaseMoments out;
  if (model.symmetric()) {
    const long pairs = (n + 1) / 2;
    out.n_used = 2 * pairs;
    out.n_distinct = pairs;
    const long n_chunks = (pairs + kChunk - 1) / kChunk;
    std::vector<double> sum(static_cast<std::size_t>(n_chunks), 0.0);
    std::vector<double> sumsq(static_cast<std::size_t>(n_chunks), 0.0);
    run_chunks(n_chunks, workers, [&](long c) {
      Rng rng(sub_seed(seed, static_cast<std::uint64_t>(c)));
      const long lo = c * kChunk;
      const long hi = std::min(pairs, lo + kChunk);
      double s = 0.0, s2 = 0.0;
      for (long i = lo; i < hi; ++i) {
        const double d = model.kind == PhaseNoiseKind::Gaussian
                             ? model.sigma_rel * rng.normal()
                             : rng.uniform(-model.sigma_rel, model.sigma_rel);
        const double cd = std::cos(d);
        s += cd;
        s2 += cd * cd;
      }
      sum[static_cast<std::size_t>(c)] = s;
      sumsq[static_cast<std::size_t>(c)] = s2;
    });
    double total = 0.0, total2 = 0.0;
    for (long c = 0; c < n_chunks; ++c) {
      total += sum[static_cast<std::size_t>(c)];
      total2 += sumsq[static_cast<std::size_t>(c)];
    }
    out.mean_cos = total / static_cast<double>(pairs);
    out.mean_sin = 0.0;
    if (pairs > 1)
      out.var_cos = (total2 - total * total / static_cast<double>(pairs)) /
                    static_cast<double>(pairs - 1);
    return out;
  }

  // from-background: one re-drawn background per realization, relative phase
  // accumulated at the two slit positions
  const auto& tmpl = *model.background;
  out.n_used = n;
  out.n_distinct = n;
  std::vector<double> grid(static_cast<std::size_t>(model.grid_steps) + 1);
  for (std::size_t i = 0; i < grid.size(); ++i)
    grid[i] = model.window_s * static_cast<double>(i) / static_cast<double>(model.grid_steps);
  const long n_chunks = (n + kChunk - 1) / kChunk;
  std::vector<double> sum_c(static_cast<std::size_t>(n_chunks), 0.0);
  std::vector<double> sum_s(static_cast<std::size_t>(n_chunks), 0.0);
  std::vector<double> sum_c2(static_cast<std::size_t>(n_chunks), 0.0);
  const double half_sep = 0.5 * slit_separation;
  run_chunks(n_chunks, workers, [&](long c) {
    const long lo = c * kChunk;
    const long hi = std::min(n, lo + kChunk);
    double sc = 0.0, ss = 0.0, sc2 = 0.0;
    for (long r = lo; r < hi; ++r) {
      const auto bg = sample_background(static_cast<int>(tmpl.modes.size()),
                                        sub_seed(seed, static_cast<std::uint64_t>(r)),
                                        tmpl.spectrum);
      const auto t1 = accumulate_phase(
          tidal_from_background(bg, {+half_sep, 0.0, 0.0}), grid);
      const auto t2 = accumulate_phase(
          tidal_from_background(bg, {-half_sep, 0.0, 0.0}), grid);
      const double dphi = t2.phi.back() - t1.phi.back();
      const double cd = std::cos(dphi);
      sc += cd;
      ss += std::sin(dphi);
      sc2 += cd * cd;
    }
    sum_c[static_cast<std::size_t>(c)] = sc;
    sum_s[static_cast<std::size_t>(c)] = ss;
    sum_c2[static_cast<std::size_t>(c)] = sc2;
  });
  double tc = 0.0, ts = 0.0, tc2 = 0.0;
  for (long c = 0; c < n_chunks; ++c) {
    tc += sum_c[static_cast<std::size_t>(c)];
    ts += sum_s[static_cast<std::size_t>(c)];
    tc2 += sum_c2[static_cast<std::size_t>(c)];
  }
  out.mean_cos = tc / static_cast<double>(n);
  out.mean_sin = ts / static_cast<double>(n);
  if (n > 1)
    out.var_cos = (tc2 - tc * tc / static_cast<double>(n)) / static_cast<double>(n - 1);
  return out;
}

}  // namespace

PathPhaseModel PathPhaseModel::from_background(BackgroundEnsemble ensemble,
                                               double window_s, int grid_steps) {
  PathPhaseModel m;
  m.kind = PhaseNoiseKind::FromBackground;
  m.background = std::move(ensemble);
  m.window_s = window_s;
  m.grid_steps = grid_steps;
  return m;
}

void validate_geometry(const SlitGeometry& g) {
  if (!(g.slit_separation > 0.0) || !(g.screen_distance > 0.0) ||
      !(g.de_broglie_wavelength > 0.0) || !(g.screen_half_width > 0.0))
    throw ConfigError("slit geometry: all lengths must be positive");
  if (g.screen_points < 2) throw ConfigError("slit geometry: need at least 2 screen points");
  if (g.screen_distance < 10.0 * g.slit_separation)
    throw ConfigError("slit geometry: screen_distance/slit_separation must be >= 10");
}

double fringe_period(const SlitGeometry& g) {
  return g.de_broglie_wavelength * g.screen_distance / g.slit_separation;
}

double path_length(const SlitGeometry& g, int slit_index, double screen_x) {
  validate_geometry(g);
  const double y_slit = slit_offset(g, slit_index);
  // source on axis, one screen distance behind the slit plane
  const double source_leg = std::hypot(g.screen_distance, y_slit);
  const double screen_leg = std::hypot(g.screen_distance, screen_x - y_slit);
  return source_leg + screen_leg;
}

std::complex<double> path_amplitude(const SlitGeometry& g, int slit_index,
                                    double screen_x, double extra_phase) {
  if (std::fabs(screen_x) > g.screen_half_width)
    throw RangeError("path_amplitude: screen position outside the screen");
  const double phase =
      2.0 * M_PI / g.de_broglie_wavelength * path_length(g, slit_index, screen_x) +
      extra_phase;
  return std::polar(1.0 / std::sqrt(2.0), phase);
}

IntensityProfile two_slit_intensity(const SlitGeometry& geometry,
                                    const PathPhaseModel& phase_model,
                                    long n_realizations, std::uint64_t seed,
                                    int workers) {
  validate_geometry(geometry);
  if (n_realizations < 1) throw SampleSizeError("two_slit_intensity: need n >= 1");
  if (phase_model.kind == PhaseNoiseKind::FromBackground && !phase_model.background)
    throw ConfigError("two_slit_intensity: from-background model has no ensemble");
  if (phase_model.sigma_rel < 0.0)
    throw ConfigError("two_slit_intensity: sigma must be non-negative");

  const PhaseMoments mom = phase_moments(phase_model, geometry.slit_separation,
                                         n_realizations, seed, workers);

  // |A1 + A2 e^{i dPhi}|^2 = 1 + cos(delta - dPhi) for the equal-amplitude
  // point-slit paths, delta = phase(A1) - phase(A2); averaging over the draws
  // leaves the first circular moments. Each mirrored pair (+x, -x) shares one
  // delta evaluation, so I(x) = I(-x) holds exactly whenever mean_sin = 0.
  IntensityProfile profile;
  profile.geometry = geometry;
  profile.seed = seed;
  profile.n_realizations = mom.n_used;
  const auto npts = static_cast<std::size_t>(geometry.screen_points);
  profile.positions.resize(npts);
  profile.intensity.resize(npts);
  const double k = 2.0 * M_PI / geometry.de_broglie_wavelength;
  for (std::size_t i = npts / 2; i < npts; ++i) {
    const double x = (npts % 2 == 1 && i == npts / 2)
                         ? 0.0
                         : geometry.screen_half_width *
                               (2.0 * static_cast<double>(i) /
                                    static_cast<double>(npts - 1) -
                                1.0);
    const double delta = k * (path_length(geometry, 1, x) - path_length(geometry, 2, x));
    const double even = std::cos(delta) * mom.mean_cos;
    const double odd = std::sin(delta) * mom.mean_sin;
    profile.positions[i] = x;
    profile.intensity[i] = std::max(0.0, 1.0 + even + odd);
    const std::size_t mirror = npts - 1 - i;
    if (mirror != i) {
      profile.positions[mirror] = -x;
      profile.intensity[mirror] = std::max(0.0, 1.0 + even - odd);
    }
  }
  return profile;
}

IntensityProfile single_slit_control(const SlitGeometry& geometry, int slit_index) {
  validate_geometry(geometry);
  IntensityProfile profile;
  profile.geometry = geometry;
  profile.seed = 0;
  profile.n_realizations = 1;
  const auto npts = static_cast<std::size_t>(geometry.screen_points);
  profile.positions.resize(npts);
  profile.intensity.resize(npts);
  for (std::size_t i = 0; i < npts; ++i) {
    const double x = (npts % 2 == 1 && i == npts / 2)
                         ? 0.0
                         : geometry.screen_half_width *
                               (2.0 * static_cast<double>(i) /
                                    static_cast<double>(npts - 1) -
                                1.0);
    profile.positions[i] = x;
    profile.intensity[i] = std::norm(path_amplitude(geometry, slit_index, x, 0.0));
  }
  return profile;
}

double visibility(const IntensityProfile& profile) {
  const double period = fringe_period(profile.geometry);
  const double window = period;  // central window [-period, period]: 2 periods
  if (profile.geometry.screen_half_width < window)
    throw RangeError("visibility: profile covers fewer than 2 fringe periods");
  double i_max = -HUGE_VAL;
  double i_min = HUGE_VAL;
  int in_window = 0;
  for (std::size_t i = 0; i < profile.positions.size(); ++i) {
    if (std::fabs(profile.positions[i]) > window) continue;
    ++in_window;
    i_max = std::max(i_max, profile.intensity[i]);
    i_min = std::min(i_min, profile.intensity[i]);
  }
  if (in_window < 5) throw RangeError("visibility: too few points in the fringe window");
  const double denom = i_max + i_min;
  if (denom <= 0.0) return 0.0;
  return (i_max - i_min) / denom;
}

std::vector<std::pair<double, double>> visibility_curve(const SlitGeometry& geometry,
                                                        std::span<const double> sigmas,
                                                        long n_realizations,
                                                        std::uint64_t seed, int workers) {
  std::vector<std::pair<double, double>> out;
  out.reserve(sigmas.size());
  for (std::size_t i = 0; i < sigmas.size(); ++i) {
    if (sigmas[i] < 0.0) throw ConfigError("visibility_curve: sigmas must be non-negative");
    const auto profile = two_slit_intensity(geometry, PathPhaseModel::gaussian(sigmas[i]),
                                            n_realizations, sub_seed(seed, i), workers);
    out.emplace_back(sigmas[i], visibility(profile));
  }
  return out;
}

}  // namespace stogra
