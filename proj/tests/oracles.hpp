// Test-only oracles, kept independent of the evaluation paths they check.
#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "calabi/specfun.hpp"

namespace oracles {

// 4th-order central differences.
inline double fd_first(const std::function<double(double)>& f, double x, double h) {
  return (f(x - 2 * h) - 8.0 * f(x - h) + 8.0 * f(x + h) - f(x + 2 * h)) / (12.0 * h);
}

inline double fd_second(const std::function<double(double)>& f, double x, double h) {
  return (-f(x - 2 * h) + 16.0 * f(x - h) - 30.0 * f(x) + 16.0 * f(x + h) - f(x + 2 * h)) /
         (12.0 * h * h);
}

// Integer-order K_m as the limit of the defining formula: symmetrized
// epsilon pairs S(e) = (K_{m+e} + K_{m-e})/2 kill the odd terms, then two
// Richardson levels in e^2 remove the e^2 and e^4 errors.  Schedule:
// e0 = 1/64, halved twice.
inline double bessel_k_integer_limit(int m, double y) {
  using calabi::specfun::bessel_k;
  using calabi::specfun::BesselPath;
  const double e0 = 1.0 / 64.0;
  auto sym = [&](double e) {
    return 0.5 * (bessel_k(m + e, y, BesselPath::series) + bessel_k(m - e, y, BesselPath::series));
  };
  const double s0 = sym(e0), s1 = sym(0.5 * e0), s2 = sym(0.25 * e0);
  const double r0 = (4.0 * s1 - s0) / 3.0;
  const double r1 = (4.0 * s2 - s1) / 3.0;
  return (16.0 * r1 - r0) / 15.0;
}

// Fixed-step RK4 for u'' = V(z) u + f(z), used as the independent
// initial-value oracle for the variation-of-parameters solver.
struct IvpResult {
  std::vector<double> z;
  std::vector<double> u;
};

inline IvpResult integrate_ivp(const std::function<double(double)>& V,
                               const std::function<double(double)>& f, double z_a, double u_a,
                               double up_a, double z_b, int steps) {
  if (steps < 1) throw std::invalid_argument("integrate_ivp: steps >= 1");
  const double h = (z_b - z_a) / steps;
  IvpResult out;
  out.z.reserve(steps + 1);
  out.u.reserve(steps + 1);
  double z = z_a, u = u_a, v = up_a;
  out.z.push_back(z);
  out.u.push_back(u);
  auto acc = [&](double zz, double uu) { return V(zz) * uu + f(zz); };
  for (int i = 0; i < steps; ++i) {
    const double k1u = v, k1v = acc(z, u);
    const double k2u = v + 0.5 * h * k1v, k2v = acc(z + 0.5 * h, u + 0.5 * h * k1u);
    const double k3u = v + 0.5 * h * k2v, k3v = acc(z + 0.5 * h, u + 0.5 * h * k2u);
    const double k4u = v + h * k3v, k4v = acc(z + h, u + h * k3u);
    u += h / 6.0 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u);
    v += h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
    z = z_a + (i + 1) * h;
    out.z.push_back(z);
    out.u.push_back(u);
  }
  return out;
}

inline std::vector<double> log_spaced(double a, double b, int count) {
  std::vector<double> g(count);
  const double la = std::log(a), lb = std::log(b);
  for (int i = 0; i < count; ++i) {
    g[i] = std::exp(la + (lb - la) * (count == 1 ? 0.0 : static_cast<double>(i) / (count - 1)));
  }
  return g;
}

}  // namespace oracles
