#pragma once

#include <functional>
#include <utility>

#include "calabi/log_value.hpp"

namespace calabi::ode {

// One Fourier/eigen mode of the cross-section.
//   k = 0 forces j = 0 and lambda = 0; admissibility further requires
//   lambda >= (n-1) j / 2, which is exactly beta <= 0 below.
struct Mode {
  int k = 0;
  int j = 0;
  double lambda = 0.0;
};

// Throws std::invalid_argument on violated invariants.
void validate_mode(const Mode& m, int n);

// Parameter pack of the nonzero-mode confluent hypergeometric equation.
struct HypergeomParams {
  double alpha;    // 1 - 1/n, in (0, 1)
  double beta;     // (1 - 1/n)/2 - lambda/(j n), <= 0
  double q;        // alpha - beta - 1, >= -1/n
  double gamma_n;  // 1/2 + 1/n
};

// Requires mode.j >= 1 (zero modes use the Bessel branch).
HypergeomParams hyper_params(const Mode& mode, int n);

// Certification helper: the pack for a prescribed Q at dimension n.
HypergeomParams hyper_params_from_q(int n, double q);

// zeta = z^n and its inverse.
double zeta_map(double z, int n);
double zeta_inverse(double zeta, int n);

// Per-mode fundamental solutions of
//   u'' - (j^2 n^2/4 z^n + n lambda) z^{n-2} u = 0,
// held as log-domain evaluators together with the closed-form Wronskian
// W(G, D).  Three branches:
//   k = 0          : {1, z},                              W = 1
//   j = 0, k >= 1  : z^{1/2} I_{1/n}, z^{1/2} K_{1/n},    W = -n/2
//   j >= 1         : e^{j z^n/2} M,   e^{j z^n/2} T~,     W = G(a-1)/G(a-b) j^{1/n}
class FundamentalPair {
 public:
  enum class Branch { linear, bessel, hypergeom };

  LogValue G(double z) const;
  LogValue D(double z) const;

  // d/dz log G and d/dz log D, analytic (via derivative identities of the
  // underlying special functions, not finite differences).
  double log_G_prime(double z) const;
  double log_D_prime(double z) const;

  const Mode& mode() const { return mode_; }
  int dim() const { return n_; }
  Branch branch() const { return branch_; }
  double w_const() const { return w_const_; }
  const LogValue& w_log() const { return w_log_; }

 private:
  friend FundamentalPair fundamental_pair(const Mode&, int);
  Mode mode_;
  int n_ = 2;
  Branch branch_ = Branch::linear;
  double bessel_arg_coeff_ = 0.0;  // 2 sqrt(lambda/n)
  HypergeomParams hp_{};
  double w_const_ = 1.0;
  LogValue w_log_ = LogValue::one();
};

FundamentalPair fundamental_pair(const Mode& mode, int n);

// Scaled residual of the per-mode ODE at z:
//   |u'' - (j^2 n^2/4 z^n + n lambda) z^{n-2} u - z^{n-1} rhs|
// divided by the largest of the three term magnitudes.  u'' by a 4th-order
// central stencil with step h (default max(1e-5, 1e-5 z)).
double ode_residual(const std::function<double(double)>& u, const Mode& mode, int n, double z,
                    const std::function<double(double)>& rhs = {}, double h = 0.0);

// Same residual for a positive log-domain evaluator: differentiates log u,
// so it stays usable where u itself overflows.
double ode_residual_log(const std::function<LogValue(double)>& log_u, const Mode& mode, int n,
                        double z, double h = 0.0);

// Laplace-method profile machinery of the nonzero-mode estimates.
//   F(t) = y t + Q log(t/(t+1)),  G(u) = -u^2 + 2 sqrt(-y) u + (2Q+gamma_n) log u
double profile_F(double t, double q, double y);
double profile_G(double u, double q, double gamma_n, double y);
double critical_t0(double q, double y);                  // requires q > 0
double critical_u0(double q, double gamma_n, double y);  // requires 2q + gamma_n >= 0

struct LaplaceProfile {
  double t0;
  double u0;
  double f_at_t0;
  double g_at_u0;
};

// Requires y <= -1 and q > 0 (Case A).
LaplaceProfile laplace_profile(const HypergeomParams& p, double y);

// F^(z) = -j z^n/2 + F(t0(z)) and G^(z) = -j z^n/2 + G(u0(z)) for a nonzero
// mode; the monotone envelopes of log D and log G.
std::pair<double, double> fhat_ghat(const Mode& mode, int n, double z);

}  // namespace calabi::ode
