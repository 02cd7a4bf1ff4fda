#pragma once

#include <array>
#include <cmath>
#include <cstddef>

namespace stogra {

// Index 0 is the time component; 1..3 spatial. Wave vectors are stored with
// covariant components k_mu (units 1/m), events with contravariant x^mu where
// x^0 = c*t (meters).
struct FourVector {
  std::array<double, 4> c{0.0, 0.0, 0.0, 0.0};

  double& operator[](int i) { return c[static_cast<std::size_t>(i)]; }
  double operator[](int i) const { return c[static_cast<std::size_t>(i)]; }
};

// Minkowski signature diag(+1, -1, -1, -1).
inline constexpr std::array<double, 4> kEtaDiag{1.0, -1.0, -1.0, -1.0};

// eta^{mu nu} a_mu b_nu; identical to eta_{mu nu} a^mu b^nu for diagonal eta.
inline double eta_dot(const FourVector& a, const FourVector& b) {
  return a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3];
}

// Plain contraction k_gamma x^gamma of a covariant with a contravariant vector.
inline double contract(const FourVector& k, const FourVector& x) {
  return k[0] * x[0] + k[1] * x[1] + k[2] * x[2] + k[3] * x[3];
}

// Dense symmetric 4x4 matrix, row-major storage.
struct Sym4 {
  std::array<double, 16> m{};

  double& at(int i, int j) { return m[static_cast<std::size_t>(4 * i + j)]; }
  double at(int i, int j) const { return m[static_cast<std::size_t>(4 * i + j)]; }

  static Sym4 zero() { return Sym4{}; }

  static Sym4 minkowski() {
    Sym4 g;
    for (int i = 0; i < 4; ++i) g.at(i, i) = kEtaDiag[static_cast<std::size_t>(i)];
    return g;
  }

  Sym4& add_scaled(const Sym4& o, double s) {
    for (std::size_t i = 0; i < 16; ++i) m[i] += s * o.m[i];
    return *this;
  }

  Sym4 scaled(double s) const {
    Sym4 r = *this;
    for (auto& x : r.m) x *= s;
    return r;
  }

  double max_abs() const {
    double mx = 0.0;
    for (double x : m) mx = std::max(mx, std::fabs(x));
    return mx;
  }

  double asymmetry() const {
    double mx = 0.0;
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j) mx = std::max(mx, std::fabs(at(i, j) - at(j, i)));
    return mx;
  }
};

inline Sym4 operator+(Sym4 a, const Sym4& b) { return a.add_scaled(b, 1.0); }

// Event with x^0 = c*t; positions in meters, t in seconds.
FourVector event(double t_seconds, const std::array<double, 3>& pos_m);

}  // namespace stogra
