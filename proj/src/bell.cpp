#include "stogra/bell.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "stogra/rng.hpp"
#include "stogra/stats.hpp"

namespace stogra {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;

double wrap_2pi(double x) {
  double w = std::fmod(x, kTwoPi);
  if (w < 0.0) w += kTwoPi;
  return w;
}

template <typename F>
double simpson(const F& f, double a, double b, double fa, double fm, double fb) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

template <typename F>
double adaptive_simpson(const F& f, double a, double b, double fa, double fm, double fb,
                        double whole, double eps, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = simpson(f, a, m, fa, flm, fm);
  const double right = simpson(f, m, b, fm, frm, fb);
  if (depth <= 0 || std::fabs(left + right - whole) <= 15.0 * eps)
    return left + right + (left + right - whole) / 15.0;
  return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * eps, depth - 1) +
         adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * eps, depth - 1);
}

// Integrates f over [a, b] to absolute tolerance eps.
template <typename F>
double integrate(const F& f, double a, double b, double eps) {
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(0.5 * (a + b));
  return adaptive_simpson(f, a, b, fa, fm, fb, simpson(f, a, b, fa, fm, fb), eps, 48);
}

// (1/2pi) integral of rho(Phi) * g(Phi) over one period, segment by segment so
// the table kinks never sit inside a panel.
template <typename G>
double distribution_moment(const PhaseDistribution& dist, const G& g, double eps) {
  const auto f = [&](double phi) { return dist(phi) * g(phi) / kTwoPi; };
  if (dist.kind == PhaseDistribution::Kind::Constant)
    return integrate(f, 0.0, kTwoPi, eps);
  double total = 0.0;
  const std::size_t n = dist.table_phi.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double a = dist.table_phi[i];
    const double b = i + 1 < n ? dist.table_phi[i + 1] : dist.table_phi.front() + kTwoPi;
    if (b <= a) continue;
    total += integrate(f, a, b, eps * (b - a) / kTwoPi);
  }
  return total;
}

}  // namespace

PhaseDistribution PhaseDistribution::constant(double rho) {
  if (rho < 0.0) throw DistributionError("phase distribution: rho must be non-negative");
  PhaseDistribution d;
  d.kind = Kind::Constant;
  d.rho_const = rho;
  return d;
}

PhaseDistribution PhaseDistribution::table(std::vector<double> phi, std::vector<double> rho) {
  if (phi.size() != rho.size() || phi.size() < 2)
    throw DistributionError("phase distribution: table needs >= 2 matching nodes");
  for (std::size_t i = 0; i < phi.size(); ++i) {
    if (!(phi[i] >= 0.0) || !(phi[i] < kTwoPi))
      throw DistributionError("phase distribution: nodes must lie in [0, 2pi)");
    if (i > 0 && !(phi[i] > phi[i - 1]))
      throw DistributionError("phase distribution: nodes must be strictly increasing");
    if (rho[i] < 0.0) throw DistributionError("phase distribution: rho values must be non-negative");
  }
  PhaseDistribution d;
  d.kind = Kind::Table;
  d.table_phi = std::move(phi);
  d.table_rho = std::move(rho);
  return d;
}

double PhaseDistribution::operator()(double phi) const {
  if (kind == Kind::Constant) return rho_const;
  const double p = wrap_2pi(phi);
  const auto& xs = table_phi;
  const auto& ys = table_rho;
  // periodic linear interpolation; the wrap segment joins the last node to
  // the first node shifted by 2pi
  if (p < xs.front() || p >= xs.back()) {
    const double x0 = xs.back();
    const double x1 = xs.front() + kTwoPi;
    const double pp = p < xs.front() ? p + kTwoPi : p;
    const double t = (pp - x0) / (x1 - x0);
    return ys.back() + t * (ys.front() - ys.back());
  }
  const auto it = std::upper_bound(xs.begin(), xs.end(), p);
  const std::size_t hi = static_cast<std::size_t>(it - xs.begin());
  const std::size_t lo = hi - 1;
  const double t = (p - xs[lo]) / (xs[hi] - xs[lo]);
  return ys[lo] + t * (ys[hi] - ys[lo]);
}

double PhaseDistribution::normalization_weight() const {
  if (kind == Kind::Constant) return rho_const;
  // exact trapezoid for the piecewise-linear table, including the wrap segment
  double integral = 0.0;
  for (std::size_t i = 1; i < table_phi.size(); ++i)
    integral += 0.5 * (table_rho[i] + table_rho[i - 1]) * (table_phi[i] - table_phi[i - 1]);
  integral += 0.5 * (table_rho.front() + table_rho.back()) *
              (table_phi.front() + kTwoPi - table_phi.back());
  return integral / kTwoPi;
}

double correlation_analytic(double theta, const PhaseDistribution& dist) {
  if (dist.kind == PhaseDistribution::Kind::Constant)
    return 0.5 * dist.rho_const * std::cos(theta);
  return distribution_moment(
      dist, [theta](double phi) { return std::cos(phi) * std::cos(phi + theta); }, 1e-10);
}

double triangle_correlation(double theta) {
  double t = wrap_2pi(theta);
  if (t > M_PI) t = kTwoPi - t;
  return 1.0 - 2.0 * t / M_PI;
}

namespace {

// Any rho makes the cosine-projection correlator a pure cosine in theta:
// M(theta) = a cos(theta) - b sin(theta) = C cos(theta + phi0).
struct CosineAmplitude {
  double c = 0.0;
  double phi0 = 0.0;
};

CosineAmplitude cosine_amplitude(const PhaseDistribution& dist) {
  CosineAmplitude out;
  if (dist.kind == PhaseDistribution::Kind::Constant) {
    out.c = 0.5 * dist.rho_const;
    out.phi0 = 0.0;
    return out;
  }
  const double a = distribution_moment(
      dist, [](double phi) { return std::cos(phi) * std::cos(phi); }, 1e-12);
  const double b = distribution_moment(
      dist, [](double phi) { return std::cos(phi) * std::sin(phi); }, 1e-12);
  out.c = std::hypot(a, b);
  out.phi0 = std::atan2(b, a);
  return out;
}

}  // namespace

double model_correlation_analytic(const CorrelationModel& model, double theta) {
  switch (model.kind) {
    case OutcomeRule::CosineProjection:
      return correlation_analytic(theta, model.phase_distribution);
    case OutcomeRule::DeterministicSign:
      return triangle_correlation(theta);
    case OutcomeRule::QuantumReference:
      return std::cos(theta);
  }
  throw DomainError("unknown correlation model");
}

double CorrelationModel::bound() const {
  switch (kind) {
    case OutcomeRule::CosineProjection:
      return std::sqrt(2.0) * cosine_amplitude(phase_distribution).c;
    case OutcomeRule::DeterministicSign:
      return 1.0;
    case OutcomeRule::QuantumReference:
      return std::sqrt(2.0);
  }
  throw DomainError("unknown correlation model");
}

std::string CorrelationModel::name() const {
  switch (kind) {
    case OutcomeRule::CosineProjection: return "cosine-projection";
    case OutcomeRule::DeterministicSign: return "deterministic-sign";
    case OutcomeRule::QuantumReference: return "quantum-reference";
  }
  return "unknown";
}

CorrelationModel parse_model(const std::string& name, double rho) {
  CorrelationModel m;
  m.phase_distribution = PhaseDistribution::constant(rho);
  if (name == "cosine-projection") m.kind = OutcomeRule::CosineProjection;
  else if (name == "deterministic-sign") m.kind = OutcomeRule::DeterministicSign;
  else if (name == "quantum-reference") m.kind = OutcomeRule::QuantumReference;
  else throw ConfigError("unknown correlation model '" + name + "'");
  return m;
}

McEstimate correlation_montecarlo(double theta, const CorrelationModel& model, long n,
                                  std::uint64_t seed, int workers) {
  if (n < 100) throw SampleSizeError("correlation_montecarlo: need n >= 100");
  if (model.kind == OutcomeRule::QuantumReference)
    return {std::cos(theta), 0.0};  // reference line, no sampling

  constexpr int kShards = 64;  // fixed logical partition, worker-count invariant
  std::array<double, kShards> sums{};
  std::array<double, kShards> sumsqs{};
  std::atomic<int> next{0};
  auto run_shard = [&](int s) {
    const long base = n / kShards;
    const long count = base + (s < static_cast<int>(n % kShards) ? 1 : 0);
    Rng rng(sub_seed(seed, static_cast<std::uint64_t>(s)));
    double sum = 0.0, sumsq = 0.0;
    for (long i = 0; i < count; ++i) {
      const double phi = rng.angle();
      double x;
      if (model.kind == OutcomeRule::CosineProjection) {
        x = model.phase_distribution(phi) * std::cos(phi) * std::cos(phi + theta);
      } else {
        const double sa = std::cos(phi) >= 0.0 ? 1.0 : -1.0;
        const double sb = std::cos(phi + theta) >= 0.0 ? 1.0 : -1.0;
        x = sa * sb;
      }
      sum += x;
      sumsq += x * x;
    }
    sums[static_cast<std::size_t>(s)] = sum;
    sumsqs[static_cast<std::size_t>(s)] = sumsq;
  };

  workers = std::max(1, workers);
  if (workers == 1) {
    for (int s = 0; s < kShards; ++s) run_shard(s);
  } else {
    auto worker = [&] {
      for (;;) {
        const int s = next.fetch_add(1);
        if (s >= kShards) return;
        run_shard(s);
      }
    };
    std::vector<std::thread> pool;
    for (int w = 0; w < std::min(workers, kShards); ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  double total = 0.0, total2 = 0.0;
  for (int s = 0; s < kShards; ++s) {
    total += sums[static_cast<std::size_t>(s)];
    total2 += sumsqs[static_cast<std::size_t>(s)];
  }
  McEstimate est;
  est.estimate = total / static_cast<double>(n);
  const double var =
      std::max(0.0, (total2 - total * total / static_cast<double>(n)) /
                        static_cast<double>(n - 1));
  est.std_error = std::sqrt(var / static_cast<double>(n));
  return est;
}

double BellResult::recompute_s() const {
  return 0.5 * std::fabs(correlations[0] + correlations[1] + correlations[2] -
                         correlations[3]);
}

namespace {

std::array<double, 4> pair_thetas(const MeasurementSettings& s) {
  return {s.a - s.b, s.a_prime - s.b, s.a - s.b_prime, s.a_prime - s.b_prime};
}

}  // namespace

BellResult bell_observable_analytic(const MeasurementSettings& settings,
                                    const CorrelationModel& model) {
  BellResult r;
  r.settings = settings;
  r.method = "analytic";
  const auto thetas = pair_thetas(settings);
  for (std::size_t p = 0; p < 4; ++p)
    r.correlations[p] = model_correlation_analytic(model, thetas[p]);
  r.s_value = r.recompute_s();
  return r;
}

BellResult bell_observable_montecarlo(const MeasurementSettings& settings,
                                      const CorrelationModel& model, long n,
                                      std::uint64_t seed, int workers) {
  BellResult r;
  r.settings = settings;
  r.method = "montecarlo";
  r.n_samples = n;
  r.seed = seed;
  const auto thetas = pair_thetas(settings);
  double var_sum = 0.0;
  for (std::size_t p = 0; p < 4; ++p) {
    const auto est =
        correlation_montecarlo(thetas[p], model, n, sub_seed(seed, p), workers);
    r.correlations[p] = est.estimate;
    var_sum += est.std_error * est.std_error;
  }
  r.s_value = r.recompute_s();
  r.std_error = 0.5 * std::sqrt(var_sum);
  return r;
}

MaximizeResult maximize_bell(const CorrelationModel& model, int resolution) {
  if (resolution < 32) throw ConfigError("maximize_bell: resolution must be >= 32");

  const auto corr = [&](double theta) { return model_correlation_analytic(model, theta); };
  const auto s_of = [&](double a, double ap, double b, double bp) {
    return 0.5 * std::fabs(corr(a - b) + corr(ap - b) + corr(a - bp) - corr(ap - bp));
  };

  // difference of two grid angles is again a grid angle, so one lookup table
  // covers the whole coarse search
  std::vector<double> table(static_cast<std::size_t>(resolution));
  for (int i = 0; i < resolution; ++i)
    table[static_cast<std::size_t>(i)] = corr(kTwoPi * i / resolution);
  const auto tbl = [&](int d) {
    return table[static_cast<std::size_t>(((d % resolution) + resolution) % resolution)];
  };

  int bi = 0, bj = 0, bk = 0, bl = 0;
  double best = -1.0;
  for (int i = 0; i < resolution; ++i)
    for (int j = 0; j < resolution; ++j)
      for (int k = 0; k < resolution; ++k)
        for (int l = 0; l < resolution; ++l) {
          const double s =
              0.5 * std::fabs(tbl(i - k) + tbl(j - k) + tbl(i - l) - tbl(j - l));
          if (s > best) {
            best = s;
            bi = i; bj = j; bk = k; bl = l;
          }
        }

  std::array<double, 4> v{kTwoPi * bi / resolution, kTwoPi * bj / resolution,
                          kTwoPi * bk / resolution, kTwoPi * bl / resolution};
  double span = kTwoPi / resolution;
  constexpr int kScan = 33;
  while (span > 1e-7) {
    for (std::size_t c = 0; c < 4; ++c) {
      double best_x = v[c];
      for (int s = 0; s < kScan; ++s) {
        const double x = v[c] - span + 2.0 * span * s / (kScan - 1);
        auto cand = v;
        cand[c] = x;
        const double val = s_of(cand[0], cand[1], cand[2], cand[3]);
        if (val > best) {
          best = val;
          best_x = x;
        }
      }
      v[c] = best_x;
    }
    span *= 0.6;
  }

  MaximizeResult out;
  out.settings = {wrap_2pi(v[0]), wrap_2pi(v[1]), wrap_2pi(v[2]), wrap_2pi(v[3])};
  out.s_value = best;
  return out;
}

BoundReport bound_check(const CorrelationModel& model, int n_random_settings,
                        std::uint64_t seed) {
  if (n_random_settings < 1000)
    throw SampleSizeError("bound_check: need at least 1000 random settings");
  Rng rng(seed);
  BoundReport report;
  report.n_settings = n_random_settings;
  report.bound = model.bound();
  report.rho_weight = model.phase_distribution.normalization_weight();
  for (int i = 0; i < n_random_settings; ++i) {
    MeasurementSettings s{rng.angle(), rng.angle(), rng.angle(), rng.angle()};
    const double val = bell_observable_analytic(s, model).s_value;
    if (val > report.max_s) {
      report.max_s = val;
      report.argmax = s;
    }
  }
  report.pass = report.max_s <= report.bound + 1e-9;
  return report;
}

BridgeResult phase_source_bridge(const PhaseProvider& provider, double theta, long n,
                                 std::uint64_t seed, const PhaseDistribution& dist) {
  if (n < 1) throw SampleSizeError("phase_source_bridge: need n >= 1");
  const auto phases = provider(static_cast<std::size_t>(n), seed);
  if (phases.size() < static_cast<std::size_t>(n))
    throw SampleSizeError("phase_source_bridge: provider yielded too few samples");

  std::vector<double> outcomes(static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    const double phi = phases[i];
    outcomes[i] = dist(phi) * std::cos(phi) * std::cos(phi + theta);
  }
  const MeanVar mv = mean_variance(outcomes);
  BridgeResult r;
  r.estimate = mv.mean;
  r.std_error = n > 1 ? std::sqrt(mv.variance / static_cast<double>(n)) : 0.0;
  r.kuiper_v = kuiper_v(std::span<const double>(phases.data(), static_cast<std::size_t>(n)));
  return r;
}

}  // namespace stogra
