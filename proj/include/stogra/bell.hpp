#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "stogra/errors.hpp"

namespace stogra {

// Polarizer angles, radians, interpreted mod 2*pi.
struct MeasurementSettings {
  double a = 0.0;
  double a_prime = M_PI / 2.0;
  double b = M_PI / 4.0;
  double b_prime = -M_PI / 4.0;

  static MeasurementSettings standard() { return {}; }
};

// Distribution rho(Phi) of the hidden phase over [0, 2*pi). The constant
// convention rho = 2 is kept verbatim; normalization_weight() reports
// (1/2pi) * integral of rho, which is 2 in that case, not 1.
struct PhaseDistribution {
  enum class Kind { Constant, Table };
  Kind kind = Kind::Constant;
  double rho_const = 2.0;
  std::vector<double> table_phi;  // ascending in [0, 2*pi)
  std::vector<double> table_rho;  // >= 0

  static PhaseDistribution constant(double rho = 2.0);
  static PhaseDistribution table(std::vector<double> phi, std::vector<double> rho);

  double operator()(double phi) const;  // periodic linear interpolation
  double normalization_weight() const;
};

enum class OutcomeRule { CosineProjection, DeterministicSign, QuantumReference };

struct CorrelationModel {
  OutcomeRule kind = OutcomeRule::CosineProjection;
  PhaseDistribution phase_distribution = PhaseDistribution::constant(2.0);

  // Settings-maximum of S for this model; the declared ceiling bound_check
  // verifies against.
  double bound() const;
  std::string name() const;
};

CorrelationModel parse_model(const std::string& name, double rho = 2.0);

// Signed (1/2pi) * integral rho(Phi) cos(Phi) cos(Phi+theta) dPhi: closed form
// (rho/2) cos(theta) for constant rho, adaptive quadrature (1e-10 absolute)
// for tables.
double correlation_analytic(double theta, const PhaseDistribution& dist);

// Closed form of the uniform-phase sign-product correlation: triangle wave,
// 1 - 2*theta/pi on [0, pi], even and 2*pi periodic.
double triangle_correlation(double theta);

// Model dispatch used by the analytic Bell paths.
double model_correlation_analytic(const CorrelationModel& model, double theta);

struct McEstimate {
  double estimate = 0.0;
  double std_error = 0.0;
};

// Phi uniform on [0, 2*pi); outcome per model rule. Worker-count-invariant
// fixed-shard sampling, deterministic in seed.
McEstimate correlation_montecarlo(double theta, const CorrelationModel& model,
                                  long n, std::uint64_t seed, int workers = 1);

struct BellResult {
  double s_value = 0.0;
  std::array<double, 4> correlations{};  // M_AB, M_A'B, M_AB', M_A'B'
  std::string method;                    // "analytic" | "montecarlo"
  long n_samples = 0;
  double std_error = 0.0;
  std::uint64_t seed = 0;
  MeasurementSettings settings;

  // s_value is always recomputable from the stored correlations.
  double recompute_s() const;
};

BellResult bell_observable_analytic(const MeasurementSettings& settings,
                                    const CorrelationModel& model);

BellResult bell_observable_montecarlo(const MeasurementSettings& settings,
                                      const CorrelationModel& model, long n,
                                      std::uint64_t seed, int workers = 1);

struct MaximizeResult {
  MeasurementSettings settings;
  double s_value = 0.0;
};

// Coarse 4-d grid over [0, 2*pi)^4 on the analytic correlators, then
// coordinate-descent refinement to 1e-6 rad.
MaximizeResult maximize_bell(const CorrelationModel& model, int resolution = 32);

struct BoundReport {
  double max_s = 0.0;
  MeasurementSettings argmax;
  double bound = 0.0;
  bool pass = false;
  int n_settings = 0;
  double rho_weight = 0.0;
};

// Analytic S at random settings vs the model's declared bound (slack 1e-9).
BoundReport bound_check(const CorrelationModel& model, int n_random_settings,
                        std::uint64_t seed);

// Produces at least `count` phase samples for the given seed.
using PhaseProvider = std::function<std::vector<double>(std::size_t count, std::uint64_t seed)>;

struct BridgeResult {
  double estimate = 0.0;
  double std_error = 0.0;
  double kuiper_v = 0.0;  // uniformity of the supplied phases
};

// Cosine-projection estimator with Phi drawn from an external phase source
// (e.g. deviation-dynamics end-of-window phases) instead of the uniform law.
BridgeResult phase_source_bridge(const PhaseProvider& provider, double theta, long n,
                                 std::uint64_t seed, const PhaseDistribution& dist);

}  // namespace stogra
