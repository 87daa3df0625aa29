#include "calabi/calabi_ode.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "calabi/errors.hpp"
#include "calabi/specfun.hpp"

namespace calabi::ode {

namespace sf = calabi::specfun;

void validate_mode(const Mode& m, int n) {
  if (n < 2) throw std::invalid_argument("mode: requires n >= 2");
  if (m.k < 0 || m.j < 0 || m.lambda < 0.0) {
    throw std::invalid_argument("mode: k, j, lambda must be non-negative");
  }
  if (m.k == 0 && (m.j != 0 || m.lambda != 0.0)) {
    throw std::invalid_argument("mode: k = 0 forces j = 0 and lambda = 0");
  }
  if (m.k > 0 && m.j == 0 && m.lambda <= 0.0) {
    throw std::invalid_argument("mode: zero-weight mode with k > 0 needs lambda > 0");
  }
  const double floor_lambda = 0.5 * (n - 1.0) * m.j;
  if (m.lambda < floor_lambda - 1e-12) {
    throw std::invalid_argument("mode: lambda < (n-1) j / 2 (beta would be positive)");
  }
}

HypergeomParams hyper_params(const Mode& mode, int n) {
  validate_mode(mode, n);
  if (mode.j < 1) {
    throw std::domain_error("hyper_params: zero modes use the Bessel branch");
  }
  HypergeomParams p;
  p.alpha = 1.0 - 1.0 / n;
  p.beta = 0.5 * (1.0 - 1.0 / n) - mode.lambda / (static_cast<double>(mode.j) * n);
  p.q = p.alpha - p.beta - 1.0;
  p.gamma_n = 0.5 + 1.0 / n;
  if (p.beta > 1e-12) {
    throw std::domain_error("hyper_params: beta > 0");
  }
  return p;
}

HypergeomParams hyper_params_from_q(int n, double q) {
  if (n < 2) throw std::invalid_argument("hyper_params_from_q: requires n >= 2");
  HypergeomParams p;
  p.alpha = 1.0 - 1.0 / n;
  p.q = q;
  p.beta = p.alpha - 1.0 - q;
  p.gamma_n = 0.5 + 1.0 / n;
  if (q < -1.0 / n - 1e-12) {
    throw std::domain_error("hyper_params_from_q: q < -1/n");
  }
  return p;
}

double zeta_map(double z, int n) {
  if (!(z > 0.0)) throw std::domain_error("zeta_map: requires z > 0");
  return std::pow(z, n);
}

double zeta_inverse(double zeta, int n) {
  if (!(zeta > 0.0)) throw std::domain_error("zeta_inverse: requires zeta > 0");
  return std::pow(zeta, 1.0 / n);
}

// ------------------------------------------------------- fundamental pair --

LogValue FundamentalPair::G(double z) const {
  switch (branch_) {
    case Branch::linear:
      return LogValue::one();
    case Branch::bessel: {
      const double y = bessel_arg_coeff_ * std::pow(z, 0.5 * n_);
      LogValue i = sf::log_bessel_i(1.0 / n_, y);
      return LogValue(i.sign, i.log_abs + 0.5 * std::log(z));
    }
    case Branch::hypergeom: {
      const double zn = std::pow(z, n_);
      LogValue m = sf::log_kummer_m(hp_.beta, hp_.alpha, -mode_.j * zn);
      return LogValue(m.sign, m.log_abs + 0.5 * mode_.j * zn);
    }
  }
  return LogValue::zero();
}

LogValue FundamentalPair::D(double z) const {
  switch (branch_) {
    case Branch::linear:
      return LogValue::from_value(z);
    case Branch::bessel: {
      const double y = bessel_arg_coeff_ * std::pow(z, 0.5 * n_);
      LogValue k = sf::log_bessel_k(1.0 / n_, y);
      return LogValue(k.sign, k.log_abs + 0.5 * std::log(z));
    }
    case Branch::hypergeom: {
      const double zn = std::pow(z, n_);
      LogValue t = sf::tri_t(hp_.beta, hp_.alpha, -mode_.j * zn);
      return LogValue(t.sign, t.log_abs + 0.5 * mode_.j * zn);
    }
  }
  return LogValue::zero();
}

double FundamentalPair::log_G_prime(double z) const {
  switch (branch_) {
    case Branch::linear:
      return 0.0;
    case Branch::bessel: {
      const double nu = 1.0 / n_;
      const double y = bessel_arg_coeff_ * std::pow(z, 0.5 * n_);
      const double yp = 0.5 * n_ * y / z;
      // I' = (I_{nu-1} + I_{nu+1}) / 2
      LogValue li = sf::log_bessel_i(nu, y);
      const double rm = std::exp(sf::log_bessel_i(nu - 1.0, y).log_abs - li.log_abs);
      const double rp = std::exp(sf::log_bessel_i(nu + 1.0, y).log_abs - li.log_abs);
      return 0.5 / z + 0.5 * (rm + rp) * yp;
    }
    case Branch::hypergeom: {
      const double zn = std::pow(z, n_);
      const double y = -mode_.j * zn;
      const double yp = -static_cast<double>(mode_.j) * n_ * std::pow(z, n_ - 1);
      double ratio = 0.0;  // M'/M
      if (hp_.beta != 0.0) {
        LogValue m = sf::log_kummer_m(hp_.beta, hp_.alpha, y);
        LogValue mp = sf::log_kummer_m_dy(hp_.beta, hp_.alpha, y);
        ratio = (mp / m).value();
      }
      return 0.5 * mode_.j * n_ * std::pow(z, n_ - 1) + ratio * yp;
    }
  }
  return 0.0;
}

double FundamentalPair::log_D_prime(double z) const {
  switch (branch_) {
    case Branch::linear:
      return 1.0 / z;
    case Branch::bessel: {
      const double nu = 1.0 / n_;
      const double y = bessel_arg_coeff_ * std::pow(z, 0.5 * n_);
      const double yp = 0.5 * n_ * y / z;
      // K' = -(K_{nu-1} + K_{nu+1}) / 2
      LogValue lk = sf::log_bessel_k(nu, y);
      const double rm = std::exp(sf::log_bessel_k(nu - 1.0, y).log_abs - lk.log_abs);
      const double rp = std::exp(sf::log_bessel_k(nu + 1.0, y).log_abs - lk.log_abs);
      return 0.5 / z - 0.5 * (rm + rp) * yp;
    }
    case Branch::hypergeom: {
      const double zn = std::pow(z, n_);
      const double y = -mode_.j * zn;
      const double yp = -static_cast<double>(mode_.j) * n_ * std::pow(z, n_ - 1);
      LogValue t = sf::tri_t(hp_.beta, hp_.alpha, y);
      LogValue tp = sf::tri_t_dy(hp_.beta, hp_.alpha, y);
      const double ratio = (tp / t).value();
      return 0.5 * mode_.j * n_ * std::pow(z, n_ - 1) + ratio * yp;
    }
  }
  return 0.0;
}

FundamentalPair fundamental_pair(const Mode& mode, int n) {
  validate_mode(mode, n);
  FundamentalPair fp;
  fp.mode_ = mode;
  fp.n_ = n;
  if (mode.k == 0) {
    fp.branch_ = FundamentalPair::Branch::linear;
    fp.w_const_ = 1.0;
    fp.w_log_ = LogValue::one();
  } else if (mode.j == 0) {
    fp.branch_ = FundamentalPair::Branch::bessel;
    fp.bessel_arg_coeff_ = 2.0 * std::sqrt(mode.lambda / n);
    fp.w_const_ = -0.5 * n;
    fp.w_log_ = LogValue::from_value(fp.w_const_);
  } else {
    fp.branch_ = FundamentalPair::Branch::hypergeom;
    fp.hp_ = hyper_params(mode, n);
    LogValue w = sf::log_gamma(fp.hp_.alpha - 1.0) / sf::log_gamma(fp.hp_.alpha - fp.hp_.beta);
    w *= LogValue::from_log(std::log(static_cast<double>(mode.j)) / n);
    fp.w_log_ = w;
    fp.w_const_ = w.value();
  }
  return fp;
}

// ------------------------------------------------------------- residuals ---

namespace {

double default_step(double z, double h) { return h > 0.0 ? h : std::max(1e-5, 1e-5 * z); }

double coefficient_v(const Mode& mode, int n, double z) {
  const double j = mode.j;
  return (0.25 * j * j * n * n * std::pow(z, n) + n * mode.lambda) * std::pow(z, n - 2);
}

}  // namespace

double ode_residual(const std::function<double(double)>& u, const Mode& mode, int n, double z,
                    const std::function<double(double)>& rhs, double h) {
  h = default_step(z, h);
  if (z - 2.0 * h <= 0.0) throw std::domain_error("ode_residual: stencil leaves z > 0");
  const double um2 = u(z - 2.0 * h), um1 = u(z - h), u0 = u(z), up1 = u(z + h),
               up2 = u(z + 2.0 * h);
  const double upp = (-um2 + 16.0 * um1 - 30.0 * u0 + 16.0 * up1 - up2) / (12.0 * h * h);
  if (!std::isfinite(upp)) {
    throw std::runtime_error("ode_residual: finite differencing ill-conditioned at z");
  }
  const double vu = coefficient_v(mode, n, z) * u0;
  const double source = rhs ? std::pow(z, n - 1) * rhs(z) : 0.0;
  // anything below the stencil's rounding floor is indistinguishable from zero
  const double umax = std::max({std::fabs(um2), std::fabs(um1), std::fabs(u0), std::fabs(up1),
                                std::fabs(up2)});
  // per-point evaluations carry a few ulp of error, not one
  const double eps = 4.0 * std::numeric_limits<double>::epsilon();
  const double noise = 64.0 * eps * umax / (12.0 * h * h);
  double raw = std::fabs(upp - vu - source);
  raw = raw > noise ? raw - noise : 0.0;
  const double scale =
      std::max({std::fabs(upp), std::fabs(vu), std::fabs(source), 1e-300});
  return raw / scale;
}

double ode_residual_log(const std::function<LogValue(double)>& log_u, const Mode& mode, int n,
                        double z, double h) {
  h = default_step(z, h);
  if (z - 2.0 * h <= 0.0) throw std::domain_error("ode_residual_log: stencil leaves z > 0");
  double l[5];
  for (int i = -2; i <= 2; ++i) {
    const LogValue v = log_u(z + i * h);
    if (v.sign <= 0) {
      throw std::runtime_error("ode_residual_log: evaluator not strictly positive near z");
    }
    l[i + 2] = v.log_abs;
  }
  const double lp = (l[0] - 8.0 * l[1] + 8.0 * l[3] - l[4]) / (12.0 * h);
  const double lpp = (-l[0] + 16.0 * l[1] - 30.0 * l[2] + 16.0 * l[3] - l[4]) / (12.0 * h * h);
  const double upp_over_u = lpp + lp * lp;  // u''/u for u = e^l
  const double v = coefficient_v(mode, n, z);
  const double lmax = std::max({std::fabs(l[0]), std::fabs(l[1]), std::fabs(l[2]),
                                std::fabs(l[3]), std::fabs(l[4])});
  const double eps = 4.0 * std::numeric_limits<double>::epsilon();
  const double noise =
      64.0 * eps * lmax / (12.0 * h * h) + 2.0 * std::fabs(lp) * 18.0 * eps * lmax / (12.0 * h);
  double raw = std::fabs(upp_over_u - v);
  raw = raw > noise ? raw - noise : 0.0;
  const double scale = std::max({std::fabs(upp_over_u), std::fabs(v), 1e-300});
  return raw / scale;
}

// -------------------------------------------------------- Laplace profiles --

double profile_F(double t, double q, double y) {
  return y * t + q * std::log(t / (t + 1.0));
}

double profile_G(double u, double q, double gamma_n, double y) {
  return -u * u + 2.0 * std::sqrt(-y) * u + (2.0 * q + gamma_n) * std::log(u);
}

double critical_t0(double q, double y) {
  if (!(q > 0.0)) throw std::domain_error("critical_t0: requires Q > 0");
  const double x = 4.0 * q / (-y);
  // (-1 + sqrt(1+x))/2 without cancellation for small x
  return 0.5 * x / (1.0 + std::sqrt(1.0 + x));
}

double critical_u0(double q, double gamma_n, double y) {
  if (2.0 * q + gamma_n < 0.0) throw std::domain_error("critical_u0: requires 2Q + gamma_n >= 0");
  const double s = std::sqrt(-y);
  return 0.5 * s * (1.0 + std::sqrt(1.0 + (4.0 * q + 2.0 * gamma_n) / (-y)));
}

LaplaceProfile laplace_profile(const HypergeomParams& p, double y) {
  if (!(y <= -1.0)) throw std::domain_error("laplace_profile: requires y <= -1");
  LaplaceProfile out;
  out.t0 = critical_t0(p.q, y);
  out.u0 = critical_u0(p.q, p.gamma_n, y);
  out.f_at_t0 = profile_F(out.t0, p.q, y);
  out.g_at_u0 = profile_G(out.u0, p.q, p.gamma_n, y);
  return out;
}

std::pair<double, double> fhat_ghat(const Mode& mode, int n, double z) {
  if (mode.j < 1) throw std::domain_error("fhat_ghat: requires j >= 1");
  if (!(z >= 1.0)) throw std::domain_error("fhat_ghat: requires z >= 1");
  const HypergeomParams p = hyper_params(mode, n);
  const double y = -static_cast<double>(mode.j) * std::pow(z, n);
  const LaplaceProfile lp = laplace_profile(p, y);
  const double half = 0.5 * mode.j * std::pow(z, n);
  return {-half + lp.f_at_t0, -half + lp.g_at_u0};
}

}  // namespace calabi::ode
