#pragma once

#include <functional>

namespace calabi::quad {

struct QuadResult {
  double value = 0.0;
  double abs_error_estimate = 0.0;  // >= 0
  int panels_used = 0;              // >= 1
};

struct QuadOptions {
  int panel_budget = 10000;
};

// Adaptive Gauss-Kronrod 7/15 on [a, b].  Bisects the panel with the largest
// error estimate until the summed estimate drops below tol or the budget is
// exhausted (convergence_error).
QuadResult integrate_finite(const std::function<double(double)>& f, double a, double b,
                            double tol, const QuadOptions& opts = {});

// Truncates the tail of an integral over [a, inf) for an integrand eventually
// dominated by e^{-decay_hint * t}, then delegates to integrate_finite.
// The truncation point T satisfies e^{-decay_hint * T} < 1e-18 * |f(a + 1)|;
// if no such T exists below the cap, throws truncation_error.
QuadResult integrate_semi_infinite(const std::function<double(double)>& f, double a,
                                   double decay_hint, double tol,
                                   const QuadOptions& opts = {});

}  // namespace calabi::quad
