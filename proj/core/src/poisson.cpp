#include "calabi/poisson.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "calabi/errors.hpp"

namespace calabi::poisson {

namespace {

constexpr double kGl20[10][2] = {
    {0.0765265211334973337546, 0.152753387130725850698},
    {0.22778585114164507808, 0.149172986472603746788},
    {0.373706088715419560673, 0.142096109318382051329},
    {0.510867001950827098004, 0.131688638449176626898},
    {0.636053680726515025453, 0.118194531961518417312},
    {0.746331906460150792614, 0.101930119817240435037},
    {0.839116971822218823395, 0.0832767415767047487248},
    {0.912234428251325905868, 0.0626720483341090635695},
    {0.963971927277913791268, 0.040601429800386941331},
    {0.993128599185094924786, 0.0176140071391521183119}};

double interp_linear(const SampledRhs& s, double z) {
  if (s.z.empty() || z < s.z.front() || z > s.z.back()) return 0.0;
  auto it = std::upper_bound(s.z.begin(), s.z.end(), z);
  if (it == s.z.begin()) return s.v.front();
  if (it == s.z.end()) return s.v.back();
  const std::size_t i = static_cast<std::size_t>(it - s.z.begin());
  const double t = (z - s.z[i - 1]) / (s.z[i] - s.z[i - 1]);
  return (1.0 - t) * s.v[i - 1] + t * s.v[i];
}

}  // namespace

RhsEval make_rhs(const ModeCoefficient& coeff, int n) {
  RhsEval out;
  if (const RhsSpec* spec = std::get_if<RhsSpec>(&coeff.payload)) {
    const RhsSpec s = *spec;
    switch (s.family) {
      case RhsFamily::zero:
        out.f = [](double) { return 0.0; };
        out.eta0 = 0.0;
        break;
      case RhsFamily::constant:
        out.f = [s](double) { return s.amplitude; };
        out.eta0 = 0.0;
        break;
      case RhsFamily::exp_half_power:
        out.f = [s, n](double z) { return s.amplitude * std::exp(-s.rate * std::pow(z, 0.5 * n)); };
        out.eta0 = -s.rate;
        break;
      case RhsFamily::exp_linear:
        out.f = [s](double z) { return s.amplitude * std::exp(-s.rate * z); };
        out.eta0 = 0.0;  // decays faster than any e^{eta0 z^{n/2}} with eta0 < 0 on bounded z; use 0
        break;
    }
    return out;
  }
  const SampledRhs& s = std::get<SampledRhs>(coeff.payload);
  for (std::size_t i = 1; i < s.z.size(); ++i) {
    if (!(s.z[i] > s.z[i - 1])) {
      throw std::invalid_argument("make_rhs: sampled grid must be strictly increasing");
    }
  }
  if (s.z.size() != s.v.size()) {
    throw std::invalid_argument("make_rhs: sampled grid/value size mismatch");
  }
  out.f = [s](double z) { return interp_linear(s, z); };
  out.eta0 = 0.0;  // compactly supported
  return out;
}

// ----------------------------------------------------------- ModeSolution --

struct ModeSolution::Impl {
  ode::Mode mode;
  int n = 2;
  double z1 = 1.0;
  double z_max = 10.0;
  double r_end = 10.0;  // truncation point of the tail integral
  RhsEval rhs;
  bool zero_rhs = false;

  // k >= 1 branch
  std::shared_ptr<ode::FundamentalPair> pair;
  std::vector<double> grid;          // table nodes, grid.front() = z1, back() = r_end
  std::vector<LogValue> core_acc;    // int_{z1}^{grid[i]} G xi r^{n-1}
  std::vector<LogValue> tail_acc;    // int_{grid[i]}^{r_end} D xi r^{n-1}

  // k = 0 branch: plain cumulative integrals of r^{n-1} xi and r^n xi
  std::vector<double> mom0_acc;  // cumulative moments of the k = 0 source

  LogValue integrand_g(double r) const {
    const double x = rhs.f(r) * std::pow(r, n - 1);
    return pair->G(r) * LogValue::from_value(x);
  }
  LogValue integrand_d(double r) const {
    const double x = rhs.f(r) * std::pow(r, n - 1);
    return pair->D(r) * LogValue::from_value(x);
  }

  // one GL20 panel of a LogValue integrand
  template <class F>
  LogValue panel_log(const F& f, double a, double b) const {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    LogSum sum;
    for (const auto& nw : kGl20) {
      for (int side = -1; side <= 1; side += 2) {
        LogValue v = f(c + side * h * nw[0]);
        sum.add(v * LogValue::from_value(nw[1] * h));
      }
    }
    return sum.total();
  }

  template <class F>
  double panel_linear(const F& f, double a, double b) const {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    double sum = 0.0;
    for (const auto& nw : kGl20) {
      sum += nw[1] * (f(c - h * nw[0]) + f(c + h * nw[0]));
    }
    return sum * h;
  }

  std::size_t locate(double z) const {
    auto it = std::upper_bound(grid.begin(), grid.end(), z);
    if (it == grid.begin()) return 0;
    return static_cast<std::size_t>(it - grid.begin()) - 1;
  }

  LogValue core_integral(double z) const {  // int_{z1}^z G xi r^{n-1}
    if (z <= grid.front()) return LogValue::zero();
    const std::size_t i = std::min(locate(z), grid.size() - 2);
    LogValue partial =
        (z > grid[i]) ? panel_log([&](double r) { return integrand_g(r); }, grid[i], z)
                      : LogValue::zero();
    return log_add(core_acc[i], partial);
  }

  LogValue tail_integral(double z) const {  // int_z^{r_end} D xi r^{n-1}
    if (z >= grid.back()) return LogValue::zero();
    const std::size_t i = std::min(locate(z), grid.size() - 2);
    LogValue partial =
        (grid[i + 1] > z) ? panel_log([&](double r) { return integrand_d(r); }, z, grid[i + 1])
                          : LogValue::zero();
    return log_add(tail_acc[i + 1], partial);
  }

  double eval(double z) const {
    if (zero_rhs) return 0.0;
    if (mode.k == 0) {
      // u = int_{z1}^{z} (z - r) r^{n-1} xi(r) dr; the (z - r) kernel keeps
      // the integrand sign-definite (no z*m0 - m1 cancellation)
      auto f = [&](double r) { return (z - r) * std::pow(r, n - 1) * rhs.f(r); };
      double sum = 0.0;
      for (std::size_t i = 0; i + 1 < grid.size() && grid[i] < z; ++i) {
        sum += panel_linear(f, grid[i], std::min(grid[i + 1], z));
      }
      if (z > grid.back()) sum += panel_linear(f, grid.back(), z);
      return sum;
    }
    const LogValue t1 = pair->G(z) * tail_integral(z);
    const LogValue t2 = pair->D(z) * core_integral(z);
    return (log_add(t1, t2) / pair->w_log()).value();
  }

  double eval_derivative(double z) const {
    if (zero_rhs) return 0.0;
    if (mode.k == 0) {
      const std::size_t i = std::min(locate(z), grid.size() - 2);
      double m0 = mom0_acc[i];
      if (z > grid[i]) {
        m0 += panel_linear([&](double r) { return rhs.f(r) * std::pow(r, n - 1); }, grid[i], z);
      }
      return m0;
    }
    // u' = (G' * tail + D' * core) / W; the xi boundary terms cancel
    const LogValue g = pair->G(z), d = pair->D(z);
    const LogValue gp = g * LogValue::from_value(pair->log_G_prime(z));
    const LogValue dp = d * LogValue::from_value(pair->log_D_prime(z));
    const LogValue t1 = gp * tail_integral(z);
    const LogValue t2 = dp * core_integral(z);
    return (log_add(t1, t2) / pair->w_log()).value();
  }
};

double ModeSolution::operator()(double z) const { return impl_->eval(z); }
double ModeSolution::derivative(double z) const { return impl_->eval_derivative(z); }
const ode::Mode& ModeSolution::mode() const { return impl_->mode; }
double ModeSolution::z1() const { return impl_->z1; }
double ModeSolution::z_max() const { return impl_->z_max; }

ModeSolution solve_mode(const ode::Mode& mode, int n, const ModeCoefficient& xi, double z1,
                        double z_max, const SolveOptions& opts) {
  ode::validate_mode(mode, n);
  if (!(z1 >= 1.0)) throw std::invalid_argument("solve_mode: requires z1 >= 1");
  if (!(z_max > z1)) throw std::invalid_argument("solve_mode: requires z_max > z1");

  auto impl = std::make_shared<ModeSolution::Impl>();
  impl->mode = mode;
  impl->n = n;
  impl->z1 = z1;
  impl->z_max = z_max;
  impl->rhs = make_rhs(xi, n);

  // xi identically zero: u identically zero
  if (const RhsSpec* spec = std::get_if<RhsSpec>(&xi.payload)) {
    if (spec->family == RhsFamily::zero || spec->amplitude == 0.0) {
      impl->zero_rhs = true;
      return ModeSolution(std::move(impl));
    }
  }

  if (mode.k >= 1) {
    impl->pair = std::make_shared<ode::FundamentalPair>(ode::fundamental_pair(mode, n));
  }

  // truncation point of the tail integral: walk until the log-envelope of
  // D xi r^{n-1} has dropped opts.tail_drop_nats below its value at z_max
  double r_end = z_max;
  if (mode.k >= 1) {
    auto env = [&](double r) {
      const double x = impl->rhs.f(r);
      if (x == 0.0) return -std::numeric_limits<double>::infinity();
      return impl->pair->D(r).log_abs + std::log(std::fabs(x)) + (n - 1) * std::log(r);
    };
    const double ref = env(z_max);
    if (std::isfinite(ref)) {
      while (env(r_end) > ref - opts.tail_drop_nats) {
        r_end *= 1.2;
        if (r_end > opts.tail_cap) {
          throw truncation_error("solve_mode: tail integral truncation exceeded cap");
        }
      }
    }
  }
  impl->r_end = r_end;

  // table grid: spacing limited so one GL20 panel resolves the exponential
  // scale of G, D and the source (|d log| * h <= 4), refined near sample kinks
  double rhs_rate_half = 0.0, rhs_rate_lin = 0.0;
  if (const RhsSpec* spec = std::get_if<RhsSpec>(&xi.payload)) {
    if (spec->family == RhsFamily::exp_half_power) rhs_rate_half = std::fabs(spec->rate);
    if (spec->family == RhsFamily::exp_linear) rhs_rate_lin = std::fabs(spec->rate);
  }
  std::vector<double> grid;
  grid.push_back(z1);
  const double j = mode.j;
  while (grid.back() < r_end) {
    const double r = grid.back();
    const double dlog = 0.5 * j * n * std::pow(r, n - 1) +
                        std::sqrt(n * mode.lambda) * std::pow(r, 0.5 * n - 1.0) +
                        rhs_rate_half * 0.5 * n * std::pow(r, 0.5 * n - 1.0) + rhs_rate_lin +
                        1.0;
    const double h = std::min(std::max(4.0 / dlog, 1e-3), 0.5);
    grid.push_back(std::min(r_end, r + h));
  }
  if (const SampledRhs* s = std::get_if<SampledRhs>(&xi.payload)) {
    for (double zz : s->z) {
      if (zz > z1 && zz < r_end) grid.push_back(zz);
    }
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  }
  impl->grid = grid;

  const std::size_t m = grid.size();
  if (mode.k == 0) {
    impl->mom0_acc.assign(m, 0.0);  // cumulative int r^{n-1} xi, for u'
    for (std::size_t i = 1; i < m; ++i) {
      impl->mom0_acc[i] =
          impl->mom0_acc[i - 1] +
          impl->panel_linear([&](double r) { return impl->rhs.f(r) * std::pow(r, n - 1); },
                             grid[i - 1], grid[i]);
    }
  } else {
    impl->core_acc.assign(m, LogValue::zero());
    impl->tail_acc.assign(m, LogValue::zero());
    for (std::size_t i = 1; i < m; ++i) {
      const LogValue piece =
          impl->panel_log([&](double r) { return impl->integrand_g(r); }, grid[i - 1], grid[i]);
      impl->core_acc[i] = log_add(impl->core_acc[i - 1], piece);
    }
    for (std::size_t i = m - 1; i-- > 0;) {
      const LogValue piece =
          impl->panel_log([&](double r) { return impl->integrand_d(r); }, grid[i], grid[i + 1]);
      impl->tail_acc[i] = log_add(impl->tail_acc[i + 1], piece);
    }
  }
  return ModeSolution(std::move(impl));
}

// ------------------------------------------------------ mode_growth_bound --

std::function<double(double)> mode_growth_bound(const ode::Mode& mode,
                                                const spectral::CalabiParams& params,
                                                double b_k, double eta0, double eta) {
  spectral::validate_params(params);
  const double db = params.delta_b();
  if (!(std::fabs(eta0) < 0.5 * db)) {
    throw std::domain_error("mode_growth_bound: requires |eta0| < delta_b / 2");
  }
  if (!(eta > eta0)) throw std::domain_error("mode_growth_bound: requires eta > eta0");
  if (b_k < 0.0) throw std::invalid_argument("mode_growth_bound: requires B_k >= 0");
  const double lam = spectral::assemble_lambda(mode, params);
  const double weight = b_k * std::pow(std::max(1.0, lam), 0.5 / params.n);
  const double half_n = 0.5 * params.n;
  return [weight, eta, half_n](double z) { return weight * std::exp(eta * std::pow(z, half_n)); };
}

// --------------------------------------------------------------- synthesis -

double Synthesis::aggregate_envelope(double z) const {
  double sum = 0.0;
  for (std::size_t i = 0; i < per_mode.size(); ++i) {
    sum += std::fabs(per_mode[i](z)) * sup_weights[i];
  }
  return sum;
}

Synthesis synthesize(const spectral::SpectrumTable& spectrum,
                     const std::vector<ModeCoefficient>& coefficients, int trunc_n,
                     const SynthesisOptions& opts) {
  if (trunc_n < 0 || static_cast<std::size_t>(trunc_n) > spectrum.modes.size()) {
    throw std::invalid_argument("synthesize: trunc_N must not exceed the spectrum size");
  }
  const int n = spectrum.params.n;
  const int k0 = opts.k0 > 0 ? opts.k0 : 2 * n + 1;
  const double sup_exp = spectral::eigenfunction_sup_exponent(n, 0);

  Synthesis out;
  for (const ModeCoefficient& c : coefficients) {
    if (c.mode_index < 0 || static_cast<std::size_t>(c.mode_index) >= spectrum.modes.size()) {
      throw std::invalid_argument("synthesize: coefficient refers to a missing mode");
    }
    if (c.mode_index >= trunc_n) {
      throw std::invalid_argument("synthesize: coefficient beyond the truncation index");
    }
    const ode::Mode mode = spectrum.modes[c.mode_index].mode;
    out.modes.push_back(mode);
    out.per_mode.push_back(solve_mode(mode, n, c, opts.z1, opts.z_max, opts.solve));
    const double lam = spectrum.modes[c.mode_index].cross_section_eigenvalue;
    out.sup_weights.push_back(std::pow(std::max(1.0, lam), sup_exp));
  }

  // tail bound over the modes beyond the truncation index:
  //   sum_k  (c_norm / Lambda^{K0}) * Lambda^{1/(2n)} * e^{eta z_max^{n/2}} * Lambda^{n/2}
  double tail = 0.0;
  const double growth = std::exp(opts.eta * std::pow(opts.z_max, 0.5 * n));
  for (std::size_t k = static_cast<std::size_t>(trunc_n); k < spectrum.modes.size(); ++k) {
    const double lam = spectrum.modes[k].cross_section_eigenvalue;
    if (!(lam > 0.0)) continue;
    tail += spectral::fourier_decay_bound(lam, k0, opts.c_norm) *
            std::pow(lam, 0.5 / n) * std::pow(std::max(1.0, lam), sup_exp) * growth;
  }
  out.tail_bound = tail;
  if (tail > opts.tail_tolerance) {
    throw convergence_error("synthesize: tail bound " + std::to_string(tail) +
                            " exceeds tolerance");
  }
  return out;
}

// -------------------------------------------------------------- classify ---

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::linear_plus_decaying:
      return "linear_plus_decaying";
    case Verdict::constant:
      return "constant";
    case Verdict::gap_violation:
      return "gap_violation";
  }
  return "?";
}

namespace {

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double residual = 0.0;  // max |fit - data|
};

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t m = x.size();
  if (m < 2) throw std::invalid_argument("fit: needs at least two points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < m; ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double det = m * sxx - sx * sx;
  if (det == 0.0) throw std::invalid_argument("fit: degenerate abscissae");
  LineFit f;
  f.slope = (m * sxy - sx * sy) / det;
  f.intercept = (sy - f.slope * sx) / m;
  for (std::size_t i = 0; i < m; ++i) {
    f.residual = std::max(f.residual, std::fabs(f.intercept + f.slope * x[i] - y[i]));
  }
  return f;
}

}  // namespace

GrowthClass decompose_harmonic(const std::vector<ModeSamples>& samples,
                               const spectral::CalabiParams& params) {
  spectral::validate_params(params);
  const int n = params.n;
  const ModeSamples* mode0 = nullptr;
  for (const ModeSamples& s : samples) {
    if (s.mode.k == 0) mode0 = &s;
  }
  if (mode0 == nullptr) {
    throw std::invalid_argument("decompose_harmonic: mode-0 samples required");
  }
  if (mode0->z.size() < 2 || mode0->z.back() < 10.0 * mode0->z.front()) {
    throw std::invalid_argument("decompose_harmonic: mode-0 grid must cover a decade of z");
  }

  GrowthClass out;
  const LineFit base = fit_line(mode0->z, mode0->u);
  out.kappa0 = base.slope;
  out.c0 = base.intercept;
  out.residual = base.residual;

  double min_decay = std::numeric_limits<double>::infinity();
  bool any_decay = false;
  bool violation = false;

  for (const ModeSamples& s : samples) {
    if (s.mode.k == 0) continue;
    if (s.z.size() < 4) {
      throw std::invalid_argument("decompose_harmonic: higher-mode grids too short to fit");
    }
    // upper half of the grid only, where the asymptotics dominate
    const std::size_t lo = s.z.size() / 2;
    std::vector<double> xs, ys;
    for (std::size_t i = lo; i < s.z.size(); ++i) {
      const double a = std::fabs(s.u[i]);
      if (a == 0.0) continue;
      xs.push_back(std::pow(s.z[i], 0.5 * n));
      ys.push_back(std::log(a));
    }
    if (xs.size() < 2) continue;  // identically zero tail: no decay branch
    const LineFit f = fit_line(xs, ys);
    const double rate = -f.slope;
    out.residual = std::max(out.residual, f.residual);

    // growth check: u_k / G_k must vanish along the grid
    const ode::FundamentalPair pair = ode::fundamental_pair(s.mode, n);
    const double r_first =
        std::fabs(s.u[lo]) == 0.0
            ? 0.0
            : std::exp(std::log(std::fabs(s.u[lo])) - pair.G(s.z[lo]).log_abs);
    const double r_last =
        std::fabs(s.u.back()) == 0.0
            ? 0.0
            : std::exp(std::log(std::fabs(s.u.back())) - pair.G(s.z.back()).log_abs);
    if (rate <= 0.0 || (r_first > 0.0 && r_last > 1e-2 * r_first)) {
      violation = true;
      continue;
    }
    any_decay = true;
    min_decay = std::min(min_decay, rate);
  }

  out.decay_exponent = any_decay ? min_decay : 0.0;
  // the verdict classifies the linear part; a decaying branch may ride on
  // either a constant or a linear solution
  const double scale = std::max({1.0, std::fabs(out.kappa0), std::fabs(out.c0)});
  if (violation) {
    out.verdict = Verdict::gap_violation;
  } else if (std::fabs(out.kappa0) < 1e-9 * scale) {
    out.verdict = Verdict::constant;
  } else {
    out.verdict = Verdict::linear_plus_decaying;
  }
  return out;
}

ClassifyResult classify_neumann(const spectral::SpectrumTable& spectrum, double kappa0,
                                const std::vector<double>& mode_fluxes,
                                const spectral::CalabiParams& params, double growth_exponent,
                                bool expect_pure_constant) {
  spectral::validate_params(params);
  if (!(growth_exponent < params.delta_b())) {
    throw std::domain_error("classify_neumann: growth exponent must be < delta_b");
  }
  const double z0 = params.z0;
  const int n = params.n;

  ClassifyResult out;
  double min_decay = std::numeric_limits<double>::infinity();
  bool any_mode = false;

  std::size_t flux_idx = 0;
  for (const spectral::SpectrumEntry& e : spectrum.modes) {
    if (e.mode.k == 0) continue;
    if (flux_idx >= mode_fluxes.size()) break;
    const double flux = mode_fluxes[flux_idx++];
    if (expect_pure_constant && flux != 0.0) {
      throw inconsistency_error(
          "classify_neumann: nonzero mode flux in an asserted pure-Neumann-constant problem");
    }
    const ode::FundamentalPair pair = ode::fundamental_pair(e.mode, n);
    // D' = D * (log D)'; D > 0, so the sign is the sign of (log D)'
    const double dlog = pair.log_D_prime(z0);
    if (!(dlog < 0.0)) {
      throw std::runtime_error("classify_neumann: D_k'(z0) >= 0 (mechanism violated)");
    }
    const double d_prime = pair.D(z0).value() * dlog;
    out.mode_coefficients.push_back(flux / d_prime);
    if (flux != 0.0) {
      any_mode = true;
      if (e.mode.j == 0) {
        min_decay = std::min(min_decay, 2.0 * std::sqrt(e.mode.lambda / n));
      }
      // j >= 1 modes decay like e^{-j z^n / 2}, faster than any z^{n/2} rate
    }
  }

  GrowthClass& g = out.growth;
  g.kappa0 = kappa0;
  g.c0 = 0.0;  // the additive constant ell_0 is free in the Neumann problem
  g.decay_exponent = any_mode && std::isfinite(min_decay) ? min_decay : 0.0;
  g.verdict = (kappa0 == 0.0) ? Verdict::constant : Verdict::linear_plus_decaying;
  out.radial = [kappa0](double z) { return kappa0 * z; };
  return out;
}

ClassifyResult classify_dirichlet(const spectral::SpectrumTable& spectrum,
                                  const std::vector<double>& boundary_values,
                                  const spectral::CalabiParams& params, double growth_exponent,
                                  double flux_normalization) {
  spectral::validate_params(params);
  if (!(growth_exponent < params.delta_b())) {
    throw std::domain_error("classify_dirichlet: growth exponent must be < delta_b");
  }
  const double z0 = params.z0;
  const int n = params.n;

  ClassifyResult out;
  bool any_nonzero = false;
  std::size_t idx = 0;
  for (const spectral::SpectrumEntry& e : spectrum.modes) {
    if (e.mode.k == 0) continue;
    if (idx >= boundary_values.size()) break;
    const double value = boundary_values[idx++];
    if (value == 0.0) {
      out.mode_coefficients.push_back(0.0);
      continue;
    }
    const ode::FundamentalPair pair = ode::fundamental_pair(e.mode, n);
    out.mode_coefficients.push_back(value / pair.D(z0).value());
    any_nonzero = true;
  }

  GrowthClass& g = out.growth;
  if (any_nonzero) {
    // under the corollary's hypotheses every c_k must vanish
    g.verdict = Verdict::gap_violation;
    g.kappa0 = 0.0;
    out.radial = [](double) { return 0.0; };
    return out;
  }
  if (std::isnan(flux_normalization)) {
    throw std::invalid_argument(
        "classify_dirichlet: kappa0 undetermined, flux normalization required");
  }
  g.kappa0 = flux_normalization;
  g.c0 = -flux_normalization * z0;  // u = kappa0 (z - z0)
  g.decay_exponent = 0.0;
  g.verdict = (flux_normalization == 0.0) ? Verdict::constant : Verdict::linear_plus_decaying;
  const double k0v = flux_normalization;
  out.radial = [k0v, z0](double z) { return k0v * (z - z0); };
  return out;
}

}  // namespace calabi::poisson
