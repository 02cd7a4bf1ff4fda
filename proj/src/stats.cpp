#include "stogra/stats.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace stogra {

MeanVar mean_variance(std::span<const double> x) {
  MeanVar out;
  const std::size_t n = x.size();
  if (n == 0) return out;
  double sum = 0.0;
  for (double v : x) sum += v;
  out.mean = sum / static_cast<double>(n);
  if (n < 2) return out;
  double ss = 0.0;
  for (double v : x) {
    const double d = v - out.mean;
    ss += d * d;
  }
  out.variance = ss / static_cast<double>(n - 1);
  return out;
}

double kuiper_v(std::span<const double> phases) {
  const std::size_t n = phases.size();
  if (n == 0) return 0.0;
  std::vector<double> u(n);
  const double two_pi = 2.0 * M_PI;
  for (std::size_t i = 0; i < n; ++i) {
    double p = std::fmod(phases[i], two_pi);
    if (p < 0.0) p += two_pi;
    u[i] = p / two_pi;
  }
  std::sort(u.begin(), u.end());
  double d_plus = 0.0;
  double d_minus = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double hi = static_cast<double>(i + 1) / static_cast<double>(n);
    const double lo = static_cast<double>(i) / static_cast<double>(n);
    d_plus = std::max(d_plus, hi - u[i]);
    d_minus = std::max(d_minus, u[i] - lo);
  }
  return d_plus + d_minus;
}

}  // namespace stogra
