#pragma once

#include <string>
#include <vector>

#include "calabi/calabi_ode.hpp"

namespace calabi::estimates {

// Result of checking one envelope inequality family over a grid: the observed
// extremal ratios function/envelope.  The constants C(nu), C_n of the
// estimates are existential, so certificates report what was observed and
// fail only on non-finiteness or on a one-sided constant the analysis pins
// (the Case B upper constant 1, the u0*t0 product bound).
struct BoundCertificate {
  std::string name;
  std::string grid_spec;
  double observed_lower_const = 0.0;  // min ratio over the grid
  double observed_upper_const = 0.0;  // max ratio over the grid
  std::string claimed_form;           // the envelope certified against
  bool pass = false;
};

// name|grid_spec|lower|upper|pass
std::string certificate_line(const BoundCertificate& cert);

// Log-spaced grid helpers.
std::vector<double> log_grid(double lo, double hi, int count);
// 64-point default argument grid: y = -t, t log-spaced in [1, 100].
std::vector<double> default_y_grid();
// z log-spaced in [max(1, floor), 20], 48 points.
std::vector<double> default_z_grid(double floor_z = 1.0);

inline const std::vector<double>& default_nu_set() {
  static const std::vector<double> s{0.5, 1.0 / 3.0, 0.25, 0.2};
  return s;
}
inline const std::vector<double>& default_q_set() {
  static const std::vector<double> s{1.0, 2.0, 5.0, 10.0, 20.0, 50.0};
  return s;
}

// K_nu against e^{-y}/sqrt(y) and I_nu against e^{y}/sqrt(y) on y >= 1.
BoundCertificate certify_bessel_k(double nu, const std::vector<double>& y_grid, int jobs = 1);
BoundCertificate certify_bessel_i(double nu, const std::vector<double>& y_grid, int jobs = 1);
std::vector<BoundCertificate> certify_bessel(double nu, const std::vector<double>& y_grid,
                                             int jobs = 1);
// Small-argument branch: I_nu against y^nu on (0, 1].
BoundCertificate certify_bessel_small_i(double nu, const std::vector<double>& y_grid,
                                        int jobs = 1);

// Case A (Q >= 1): the four one-sided envelopes for T~ and M, one
// certificate per envelope.  y_grid must lie in (-inf, -1].
std::vector<BoundCertificate> certify_tri_ku_case_a(const ode::HypergeomParams& p,
                                                    const std::vector<double>& y_grid,
                                                    int jobs = 1);

// Case B (Q <= 1): T~ against e^y (-y)^{beta-alpha} (upper constant must be
// <= 1) and M against (-y)^{-beta}.
std::vector<BoundCertificate> certify_case_b(const ode::HypergeomParams& p,
                                             const std::vector<double>& y_grid, int jobs = 1);

// Product estimate (stated for Q >= 1): e^{F(t0)+G(u0)} envelope, the
// T~*M envelope, and the pointwise bound u0 t0 <= (-y)^{-1/2}(Q + gamma_n/2).
std::vector<BoundCertificate> certify_product(const ode::HypergeomParams& p,
                                              const std::vector<double>& y_grid, int jobs = 1);

// F^ + eta z^{n/2} decreasing and G^ - eta z^{n/2} increasing on
// z >= max(1, eta^{2/n}); certificates report the extremal consecutive
// differences and pass iff directed violations stay below 1e-10.
std::vector<BoundCertificate> check_monotonicity(const ode::Mode& mode, int n, double eta,
                                                 const std::vector<double>& z_grid);

}  // namespace calabi::estimates
