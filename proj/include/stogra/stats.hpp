#pragma once

#include <span>

namespace stogra {

struct MeanVar {
  double mean = 0.0;
  double variance = 0.0;  // unbiased (n-1 denominator); 0 for n < 2
};

MeanVar mean_variance(std::span<const double> x);

// Kuiper's V = D+ + D- of the samples reduced mod 2*pi against the uniform
// circular law. Origin-invariant; large values flag non-uniform phases.
double kuiper_v(std::span<const double> phases);

}  // namespace stogra
