#include <cmath>
#include <random>

#include "calabi/calabi_ode.hpp"
#include "calabi/quadrature.hpp"
#include "calabi/specfun.hpp"
#include "doctest.h"
#include "oracles.hpp"

namespace ode = calabi::ode;
namespace sf = calabi::specfun;
using calabi::LogValue;
using ode::Mode;

namespace {
constexpr double kSqrtPi = 1.7724538509055160273;

// finite-difference Wronskian of a fundamental pair through the log
// evaluators: W = G D ((log D)' - (log G)'), h per the test convention
double fd_wronskian(const ode::FundamentalPair& fp, double z) {
  const double h = std::max(1e-5, 1e-5 * z);
  auto lg = [&](double t) { return fp.G(t).log_abs; };
  auto ld = [&](double t) { return fp.D(t).log_abs; };
  const double dg = oracles::fd_first(lg, z, h);
  const double dd = oracles::fd_first(ld, z, h);
  return (fp.G(z) * fp.D(z) * LogValue::from_value(dd - dg)).value();
}

Mode make_mode(int k, int j, double lambda) { return Mode{k, j, lambda}; }
}  // namespace

TEST_CASE("hyper_params from the mode data") {
  const auto p1 = ode::hyper_params(make_mode(1, 1, 0.5), 2);
  CHECK(p1.alpha == doctest::Approx(0.5));
  CHECK(p1.beta == doctest::Approx(0.0));
  CHECK(p1.q == doctest::Approx(-0.5));
  CHECK(p1.gamma_n == doctest::Approx(1.0));

  const auto p2 = ode::hyper_params(make_mode(1, 1, 2.5), 2);
  CHECK(p2.beta == doctest::Approx(-1.0));
  CHECK(p2.q == doctest::Approx(0.5));

  // lambda below (n-1) j / 2 would give beta > 0: the mode gate rejects it
  CHECK_THROWS_AS(ode::hyper_params(make_mode(1, 2, 1.0), 3), std::invalid_argument);
  // boundary lambda = (n-1) j / 2 gives beta = 0 exactly
  const auto pb = ode::hyper_params(make_mode(1, 2, 2.0), 3);
  CHECK(pb.beta == doctest::Approx(0.0).epsilon(1e-14));
  // zero modes have no hypergeometric parameters
  CHECK_THROWS_AS(ode::hyper_params(make_mode(1, 0, 1.0), 2), std::domain_error);
}

TEST_CASE("zeta map and its inverse") {
  CHECK(ode::zeta_map(2.0, 2) == doctest::Approx(4.0));
  for (int n : {2, 3, 5}) CHECK(ode::zeta_map(1.0, n) == doctest::Approx(1.0));
  for (double z : oracles::log_spaced(0.1, 100.0, 17)) {
    CHECK(ode::zeta_inverse(ode::zeta_map(z, 3), 3) == doctest::Approx(z).epsilon(1e-14));
  }
}

TEST_CASE("closed-form Wronskian constants") {
  // zero modes: W = -n/2
  for (int n : {2, 3, 4}) {
    const auto fp = ode::fundamental_pair(make_mode(1, 0, 1.7), n);
    CHECK(fp.w_const() == doctest::Approx(-0.5 * n));
    for (double z : {1.0, 2.0, 4.0}) {
      CHECK(fd_wronskian(fp, z) == doctest::Approx(fp.w_const()).epsilon(1e-7));
    }
  }
  // generic mode n=2, j=1, lambda=1/2: W = Gamma(-1/2)/Gamma(1/2) = -2
  const auto fp = ode::fundamental_pair(make_mode(1, 1, 0.5), 2);
  CHECK(fp.w_const() == doctest::Approx(-2.0).epsilon(1e-13));
  CHECK(-2.0 * kSqrtPi / kSqrtPi == doctest::Approx(-2.0));
  for (double z : {1.0, 2.0, 4.0}) {
    CHECK(fd_wronskian(fp, z) == doctest::Approx(-2.0).epsilon(1e-7));
  }
  // k = 0 pair {1, z}
  const auto fp0 = ode::fundamental_pair(make_mode(0, 0, 0.0), 2);
  CHECK(fp0.w_const() == doctest::Approx(1.0));
  CHECK(fp0.G(3.0).value() == doctest::Approx(1.0));
  CHECK(fp0.D(3.0).value() == doctest::Approx(3.0));
}

TEST_CASE("Wronskian constancy across z for random admissible modes") {
  std::mt19937 rng(23);
  std::uniform_int_distribution<int> js(1, 3);
  std::uniform_real_distribution<double> extra(0.1, 6.0);
  const int n = 2;
  for (int trial = 0; trial < 10; ++trial) {
    const int j = js(rng);
    const double lambda = 0.5 * (n - 1) * j + extra(rng);
    const auto fp = ode::fundamental_pair(make_mode(1, j, lambda), n);
    double sum = 0.0, sum2 = 0.0;
    const auto grid = oracles::log_spaced(1.0, 20.0, 20);
    for (double z : grid) {
      const double w = fd_wronskian(fp, z);
      sum += w;
      sum2 += w * w;
    }
    const double mean = sum / grid.size();
    const double var = std::max(0.0, sum2 / grid.size() - mean * mean);
    CHECK(std::fabs(mean - fp.w_const()) / std::fabs(fp.w_const()) < 1e-6);
    CHECK(std::sqrt(var) / std::fabs(mean) < 1e-6);
  }
}

TEST_CASE("sign and monotonicity of the pair") {
  for (const Mode& m : {make_mode(1, 0, 2.0), make_mode(1, 1, 1.5), make_mode(1, 2, 4.0)}) {
    const auto fp = ode::fundamental_pair(m, 2);
    for (double z : oracles::log_spaced(1.0, 15.0, 12)) {
      CHECK(fp.D(z).sign == 1);
      CHECK(fp.G(z).sign == 1);
      CHECK(fp.log_D_prime(z) < 0.0);  // D strictly decreasing
      if (z >= 2.0) CHECK(fp.log_G_prime(z) > 0.0);
    }
  }
}

TEST_CASE("Bessel-branch D against direct quadrature") {
  const int n = 3;
  const double lambda = 2.0;
  const auto fp = ode::fundamental_pair(make_mode(1, 0, lambda), n);
  const double c = 2.0 * std::sqrt(lambda / n);
  for (double z : {1.0, 2.0, 3.5}) {
    const double y = c * std::pow(z, 1.5);
    const auto k_int = calabi::quad::integrate_semi_infinite(
        [&](double t) { return std::exp(-y * std::cosh(t)) * std::cosh(t / n); }, 0.0,
        std::max(1.0, y), 1e-13);
    const double expected = std::sqrt(z) * k_int.value;
    CHECK(fp.D(z).value() == doctest::Approx(expected).epsilon(1e-8));
  }
}

TEST_CASE("asymptotics of the fundamental solutions") {
  // Bessel branch: D ~ sqrt(pi)/(2 (lambda/n)^{1/4}) e^{-c z^{n/2}} / z^{(n-2)/4}
  {
    const int n = 2;
    const double lambda = 2.0;
    const double c = 2.0 * std::sqrt(lambda / n);  // = 2
    const double z = 25.0;                         // c z^{n/2} = 50
    const auto fp = ode::fundamental_pair(make_mode(1, 0, lambda), n);
    const double log_asym = std::log(kSqrtPi / (2.0 * std::pow(lambda / n, 0.25))) -
                            c * std::pow(z, 0.5 * n) - 0.25 * (n - 2) * std::log(z);
    CHECK(std::fabs(std::exp(fp.D(z).log_abs - log_asym) - 1.0) < 0.02);
  }
  // hypergeometric branch: D ~ (j z^n)^{beta-alpha} e^{-j z^n/2} and
  // G ~ Gamma(a)/Gamma(a-b) (j z^n)^{-beta} e^{j z^n/2}
  {
    const int n = 2;
    const Mode m = make_mode(1, 1, 2.5);  // beta = -1, alpha = 1/2
    const auto p = ode::hyper_params(m, n);
    const auto fp = ode::fundamental_pair(m, n);
    const double z = 20.0;  // j z^n = 400
    const double x = m.j * std::pow(z, n);
    const double log_d_asym = (p.beta - p.alpha) * std::log(x) - 0.5 * x;
    CHECK(std::fabs(std::exp(fp.D(z).log_abs - log_d_asym) - 1.0) < 0.02);
    const double log_g_asym = sf::log_gamma(p.alpha).log_abs -
                              sf::log_gamma(p.alpha - p.beta).log_abs -
                              p.beta * std::log(x) + 0.5 * x;
    CHECK(std::fabs(std::exp(fp.G(z).log_abs - log_g_asym) - 1.0) < 0.02);
  }
}

TEST_CASE("ode_residual on exact solutions") {
  const Mode m0 = make_mode(0, 0, 0.0);
  CHECK(ode::ode_residual([](double z) { return z; }, m0, 2, 3.0) == doctest::Approx(0.0));

  for (const Mode& m : {make_mode(1, 0, 2.0), make_mode(1, 1, 0.5), make_mode(1, 1, 2.5)}) {
    const auto fp = ode::fundamental_pair(m, 2);
    for (double z : {1.5, 3.0, 6.0}) {
      CHECK(ode::ode_residual_log([&](double t) { return fp.G(t); }, m, 2, z) < 1e-6);
      CHECK(ode::ode_residual_log([&](double t) { return fp.D(t); }, m, 2, z) < 1e-6);
    }
  }
  CHECK_THROWS_AS(
      ode::ode_residual([](double z) { return z; }, m0, 2, 1e-7),
      std::domain_error);
}

TEST_CASE("laplace profile critical points") {
  // Q=2, y=-1: t0 = 1
  const auto p = ode::hyper_params_from_q(2, 2.0);
  const auto lp = ode::laplace_profile(p, -1.0);
  CHECK(lp.t0 == doctest::Approx(1.0).epsilon(1e-13));

  // bisection oracle for the root of t^2 + t + Q/y = 0 on (0, inf)
  {
    const double q = 3.7, y = -2.3;
    double lo = 0.0, hi = 10.0;
    auto g = [&](double t) { return t * t + t + q / y; };
    for (int i = 0; i < 200; ++i) {
      const double mid = 0.5 * (lo + hi);
      (g(mid) < 0.0 ? lo : hi) = mid;
    }
    CHECK(ode::critical_t0(q, y) == doctest::Approx(0.5 * (lo + hi)).epsilon(1e-12));
  }

  // Q=1, gamma=1, y=-2: u0 = 3 sqrt(2) / 2
  CHECK(ode::critical_u0(1.0, 1.0, -2.0) == doctest::Approx(2.1213203435596424).epsilon(1e-13));

  // critical points really are critical
  const double q = 2.0, gn = p.gamma_n, y = -3.0;
  const double t0 = ode::critical_t0(q, y);
  const double u0 = ode::critical_u0(q, gn, y);
  auto F = [&](double t) { return ode::profile_F(t, q, y); };
  auto G = [&](double u) { return ode::profile_G(u, q, gn, y); };
  CHECK(std::fabs(oracles::fd_first(F, t0, 1e-4)) < 1e-8);
  CHECK(std::fabs(oracles::fd_first(G, u0, 1e-4)) < 1e-8);

  CHECK_THROWS_AS(ode::critical_t0(-0.2, -1.0), std::domain_error);
  CHECK_THROWS_AS(ode::laplace_profile(ode::hyper_params_from_q(2, -0.4), -2.0),
                  std::domain_error);
}

TEST_CASE("profile concavity") {
  const double q = 2.5, y = -4.0;
  const auto p = ode::hyper_params_from_q(3, q);
  const double t0 = ode::critical_t0(q, y);
  auto F = [&](double t) { return ode::profile_F(t, q, y); };
  auto G = [&](double u) { return ode::profile_G(u, q, p.gamma_n, y); };
  for (double t : oracles::log_spaced(0.1 * t0, 10.0 * t0, 9)) {
    CHECK(oracles::fd_second(F, t, 1e-4 * t) < 0.0);
  }
  for (double u : oracles::log_spaced(0.05, 20.0, 9)) {
    CHECK(oracles::fd_second(G, u, 1e-4 * u) < 0.0);
  }
}

TEST_CASE("fhat/ghat envelope derivatives and monotone trends") {
  // dF^/dy = (1/2) sqrt(1 + 4Q/(-y))
  const Mode m = make_mode(1, 1, 2.5);  // n=2: Q = 1/2
  const int n = 2;
  const auto p = ode::hyper_params(m, n);
  auto fhat_of_y = [&](double y) { return 0.5 * y + ode::profile_F(ode::critical_t0(p.q, y), p.q, y); };
  for (double y : {-2.0, -5.0, -11.0}) {
    const double fd = oracles::fd_first(fhat_of_y, y, 1e-4);
    CHECK(fd == doctest::Approx(0.5 * std::sqrt(1.0 + 4.0 * p.q / (-y))).epsilon(1e-7));
    CHECK(fd >= 0.5);
  }

  // eta = 0: F^ non-increasing on [1, 10]
  double prev = std::numeric_limits<double>::infinity();
  for (double z : oracles::log_spaced(1.0, 10.0, 24)) {
    const auto [fh, gh] = ode::fhat_ghat(m, n, z);
    CHECK(fh <= prev + 1e-12);
    prev = fh;
  }
  // G^ - eta z^{n/2} non-decreasing for z >= eta^{2/n}, eta = 1, n = 2
  const double eta = 1.0;
  double prev_g = -std::numeric_limits<double>::infinity();
  for (double z : oracles::log_spaced(std::pow(eta, 2.0 / n), 10.0, 24)) {
    const auto [fh, gh] = ode::fhat_ghat(m, n, z);
    const double val = gh - eta * std::pow(z, 0.5 * n);
    CHECK(val >= prev_g - 1e-12);
    prev_g = val;
  }

  CHECK_THROWS_AS(ode::fhat_ghat(make_mode(1, 0, 1.0), 2, 2.0), std::domain_error);
  CHECK_THROWS_AS(ode::fhat_ghat(m, 2, 0.5), std::domain_error);
}

TEST_CASE("mode validation") {
  CHECK_THROWS_AS(ode::validate_mode(make_mode(0, 1, 0.0), 2), std::invalid_argument);
  CHECK_THROWS_AS(ode::validate_mode(make_mode(0, 0, 1.0), 2), std::invalid_argument);
  CHECK_THROWS_AS(ode::validate_mode(make_mode(1, 0, 0.0), 2), std::invalid_argument);
  CHECK_THROWS_AS(ode::validate_mode(make_mode(-1, 0, 0.0), 2), std::invalid_argument);
  CHECK_NOTHROW(ode::validate_mode(make_mode(0, 0, 0.0), 2));
  CHECK_NOTHROW(ode::validate_mode(make_mode(3, 2, 5.0), 4));
}
