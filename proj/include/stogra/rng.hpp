#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <random>

namespace stogra {

inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ull;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// Independent sub-stream seed for realization/mode/shard `index`.
inline std::uint64_t sub_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t s = seed ^ (0x9e3779b97f4a7c15ull * (index + 1));
  return splitmix64(s);
}

// mt19937_64 core with hand-rolled variate transforms. The std::
// distributions are implementation-defined, which would break the
// byte-identical reproducibility contract; these transforms are not.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t bits() { return engine_(); }

  // Uniform in [0, 1), 53-bit resolution.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double a, double b) { return a + (b - a) * uniform(); }

  // Uniform angle in [0, 2*pi).
  double angle() { return uniform() * 2.0 * M_PI; }

  double log_uniform(double a, double b) {
    return std::exp(uniform(std::log(a), std::log(b)));
  }

  // Standard Gaussian, Box-Muller with cached spare.
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u = 1.0 - uniform();  // (0, 1], keeps log finite
    double v = uniform();
    double r = std::sqrt(-2.0 * std::log(u));
    double phi = 2.0 * M_PI * v;
    spare_ = r * std::sin(phi);
    has_spare_ = true;
    return r * std::cos(phi);
  }

  // Isotropic direction on the unit sphere.
  std::array<double, 3> unit_vector() {
    double z = 1.0 - 2.0 * uniform();
    double phi = angle();
    double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
    return {rho * std::cos(phi), rho * std::sin(phi), z};
  }

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace stogra
