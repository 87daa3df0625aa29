#pragma once

#include <functional>
#include <limits>
#include <memory>
#include <variant>
#include <vector>

#include "calabi/calabi_ode.hpp"
#include "calabi/spectral.hpp"

namespace calabi::poisson {

// ------------------------------------------------------------- RHS data ----

enum class RhsFamily { zero, constant, exp_half_power, exp_linear };

// Closed-form coefficient families:
//   zero            xi = 0
//   constant        xi = amplitude
//   exp_half_power  xi = amplitude * e^{-rate * z^{n/2}}
//   exp_linear      xi = amplitude * e^{-rate * z}
struct RhsSpec {
  RhsFamily family = RhsFamily::zero;
  double amplitude = 0.0;
  double rate = 0.0;
};

struct SampledRhs {
  std::vector<double> z;  // strictly increasing, contained in [z1, z_max]
  std::vector<double> v;  // linear interpolation between samples, 0 outside
};

struct ModeCoefficient {
  int mode_index = 0;
  std::variant<RhsSpec, SampledRhs> payload;
};

// xi as a callable plus its growth rate eta0 in the z^{n/2} scale
// (xi = O(e^{eta0 z^{n/2}})), needed by the tail truncation and the
// growth lemma hypothesis.
struct RhsEval {
  std::function<double(double)> f;
  double eta0 = 0.0;
};
RhsEval make_rhs(const ModeCoefficient& coeff, int n);

// ------------------------------------------------------------ mode solve ---

struct SolveOptions {
  double table_rel_tol = 1e-12;  // accuracy of the antiderivative tables
  double tail_drop_nats = 45.0;  // truncate the tail integral after this drop
  double tail_cap = 1e4;         // hard cap on the truncation search
};

// Particular solution of  u'' - (j^2 n^2/4 z^n + n lambda) z^{n-2} u = z^{n-1} xi.
// Modes with k >= 1 evaluate
//   u(z) = G(z)/W int_z^R D xi r^{n-1} dr + D(z)/W int_{z1}^z G xi r^{n-1} dr
// through signed log-domain antiderivative tables; the k = 0 mode uses the
// double integral int_{z1}^z (z - r) r^{n-1} xi(r) dr.
class ModeSolution {
 public:
  double operator()(double z) const;
  double derivative(double z) const;  // analytic, no finite differences

  const ode::Mode& mode() const;
  double z1() const;
  double z_max() const;

  struct Impl;
  explicit ModeSolution(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

 private:
  std::shared_ptr<const Impl> impl_;
};

ModeSolution solve_mode(const ode::Mode& mode, int n, const ModeCoefficient& xi, double z1,
                        double z_max, const SolveOptions& opts = {});

// ---------------------------------------------------------- growth bound ---

// Envelope factory of the per-mode growth lemma:
//   z -> B_k * max(1, Lambda_k)^{1/(2n)} * e^{eta z^{n/2}}.
// Requires |eta0| < delta_b / 2 and eta > eta0.
std::function<double(double)> mode_growth_bound(const ode::Mode& mode,
                                                const spectral::CalabiParams& params,
                                                double b_k, double eta0, double eta);

// -------------------------------------------------------------- synthesis --

struct SynthesisOptions {
  int k0 = 0;            // 0 selects the default 2n + 1
  double c_norm = 1.0;   // |v|_{C^{2 K0}} stand-in for the decay bounds
  double eta0 = 0.0;
  double eta = 0.1;
  double tail_tolerance = 1e-6;
  double z1 = 1.0;
  double z_max = 10.0;
  SolveOptions solve;
};

// Truncated eigen-expansion u = sum u_k phi_k with a sup-norm envelope;
// throws convergence_error when the reported tail bound exceeds the
// requested tolerance.
struct Synthesis {
  std::vector<ode::Mode> modes;
  std::vector<ModeSolution> per_mode;
  std::vector<double> sup_weights;  // max(1, Lambda_k)^{n/2}
  double tail_bound = 0.0;

  // sum_k |u_k(z)| * sup_weight_k
  double aggregate_envelope(double z) const;
};

Synthesis synthesize(const spectral::SpectrumTable& spectrum,
                     const std::vector<ModeCoefficient>& coefficients, int trunc_n,
                     const SynthesisOptions& opts = {});

// ----------------------------------------------------------- classifiers ---

enum class Verdict { linear_plus_decaying, constant, gap_violation };

const char* verdict_name(Verdict v);

struct GrowthClass {
  double kappa0 = 0.0;          // linear slope
  double c0 = 0.0;              // constant term
  double decay_exponent = 0.0;  // fitted rate in |h| ~ C e^{-rate z^{n/2}}
  double residual = 0.0;        // fit quality
  Verdict verdict = Verdict::constant;
};

struct ModeSamples {
  ode::Mode mode;
  std::vector<double> z;
  std::vector<double> u;
};

// Fits kappa0, c0 on the mode-0 samples, a decay exponent per higher mode
// (least squares of log|u_k| against z^{n/2} over the upper half of the
// grid), and flags a growing component whenever u_k/G_k fails to vanish.
GrowthClass decompose_harmonic(const std::vector<ModeSamples>& samples,
                               const spectral::CalabiParams& params);

struct ClassifyResult {
  GrowthClass growth;
  std::vector<double> mode_coefficients;  // c_k per supplied mode with k >= 1
  std::function<double(double)> radial;   // the mode-0 radial part of the solution
};

// Neumann problem at z = z0: verifies D_k'(z0) < 0, solves
// c_k D_k'(z0) = flux_k, and classifies.  growth_exponent is the
// caller-asserted growth rate of the candidate and must be < delta_b.
// With expect_pure_constant set, any nonzero mode flux raises
// inconsistency_error.
ClassifyResult classify_neumann(const spectral::SpectrumTable& spectrum, double kappa0,
                                const std::vector<double>& mode_fluxes,
                                const spectral::CalabiParams& params, double growth_exponent,
                                bool expect_pure_constant = false);

// Dirichlet problem at z = z0 with zero mode-0 boundary value; the solution
// family is kappa0 (z - z0) with kappa0 fixed by the flux normalization
// (u'(z0)).  Nonzero mode boundary values determine c_k = value / D_k(z0)
// and force the gap_violation verdict.
ClassifyResult classify_dirichlet(const spectral::SpectrumTable& spectrum,
                                  const std::vector<double>& boundary_values,
                                  const spectral::CalabiParams& params, double growth_exponent,
                                  double flux_normalization =
                                      std::numeric_limits<double>::quiet_NaN());

}  // namespace calabi::poisson
