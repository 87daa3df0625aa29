#pragma once

#include <utility>

#include "calabi/log_value.hpp"

namespace calabi::specfun {

// Regime-switch thresholds, exposed so the path-independence tests can probe
// the seams.  Validated by the cross-path property tests.
struct Regimes {
  // modified Bessel I: power series up to here, scaled integral beyond
  static constexpr double bessel_i_series_max = 30.0;
  // modified Bessel K: the defining I_{-nu} - I_nu difference cancels like
  // e^{2y} * eps, so the series route is cut off much earlier than for I
  static constexpr double bessel_k_series_max = 2.0;
  // integral representations hand over to the asymptotic expansions here
  static constexpr double bessel_integral_max = 1000.0;
  // Kummer series at positive argument; large-argument expansion beyond
  static constexpr double kummer_series_max = 3000.0;
  // direct alternating Kummer series is forbidden below this argument
  static constexpr double kummer_direct_min = -5.0;
};

// Series truncation policy: next term < 1e-17 * |partial sum| while terms
// decrease; hard cap with convergence_error.
struct SeriesPolicy {
  static constexpr double term_cutoff = 1e-17;
  static constexpr int max_terms = 10000;
};

// ---------------------------------------------------------------- gamma ----

// sign and log|Gamma(x)|; reflection formula for x < 0.5.
// Throws std::domain_error at the poles x = 0, -1, -2, ...
LogValue log_gamma(double x);
double gamma_fn(double x);

// ------------------------------------------------------ modified Bessel ----

enum class BesselPath { auto_select, series, integral, asymptotic };

double bessel_i(double nu, double y, BesselPath path = BesselPath::auto_select);
LogValue log_bessel_i(double nu, double y, BesselPath path = BesselPath::auto_select);

// For integer nu the defining formula is a limit; the integral representation
// is the primary route at every argument.  BesselPath::series selects the
// I_{-nu} - I_nu difference formula (non-integer nu only).
double bessel_k(double nu, double y, BesselPath path = BesselPath::auto_select);
LogValue log_bessel_k(double nu, double y, BesselPath path = BesselPath::auto_select);

// ------------------------------------------- confluent hypergeometric ------

// Kummer's function M(beta, alpha, y).  Negative arguments route through the
// transformation law M(beta,alpha,y) = e^y M(alpha-beta, alpha, -y) so the
// inner series is evaluated at -y > 0.
double kummer_m(double beta, double alpha, double y);
LogValue log_kummer_m(double beta, double alpha, double y);

// Direct power series (test seam; cancellation-prone for y < kummer_direct_min).
double kummer_m_series(double beta, double alpha, double y);
LogValue log_kummer_m_series(double beta, double alpha, double y);

// Large-argument expansion at y > 0 (test seam for the regime boundary).
LogValue log_kummer_m_large(double beta, double alpha, double y);

// Tricomi's function U(beta, alpha, y) for beta > 0, y > 0, by numerical
// integration of its defining representation.
double tricomi_u(double beta, double alpha, double y);
LogValue log_tricomi_u(double beta, double alpha, double y);

// Extension of U to beta <= 0 through the two-term Kummer connection formula.
struct TricomiResult {
  double value;
  bool via_connection;  // true when the connection-formula path was used
};
TricomiResult tricomi_u_ext(double beta, double alpha, double y);

// The decaying solution T~(beta, alpha, y) = e^y U(alpha-beta, alpha, -y)
// on the negative axis.  Requires alpha > beta, y < 0.
LogValue tri_t(double beta, double alpha, double y);

// d/dy T~(beta, alpha, y) = T~ + e^y (alpha-beta) U(alpha-beta+1, alpha+1, -y)
LogValue tri_t_dy(double beta, double alpha, double y);

// d/dy M(beta, alpha, y) = (beta/alpha) M(beta+1, alpha+1, y)
LogValue log_kummer_m_dy(double beta, double alpha, double y);

// Independent oracle for M on the negative axis through the Bessel kernel
// integral; requires alpha > beta, y <= 0.
LogValue kummer_m_via_bessel(double beta, double alpha, double y, double tol = 1e-12);

// (I_nu, K_nu) recovered from M and U; identity-test surface.
std::pair<double, double> bessel_hypergeom_bridge(double nu, double y);

}  // namespace calabi::specfun
