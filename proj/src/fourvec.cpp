#include "stogra/fourvec.hpp"

#include "stogra/background.hpp"

namespace stogra {

FourVector event(double t_seconds, const std::array<double, 3>& pos_m) {
  FourVector x;
  x[0] = kSpeedOfLight * t_seconds;
  x[1] = pos_m[0];
  x[2] = pos_m[1];
  x[3] = pos_m[2];
  return x;
}

}  // namespace stogra
