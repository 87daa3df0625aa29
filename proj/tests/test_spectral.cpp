#include <cmath>
#include <sstream>

#include "calabi/calabi_ode.hpp"
#include "calabi/spectral.hpp"
#include "doctest.h"

namespace spectral = calabi::spectral;
using calabi::ode::Mode;
using spectral::CalabiParams;

namespace {
CalabiParams make_params(int n, double z0, double lambda_d, double delta) {
  CalabiParams p;
  p.n = n;
  p.z0 = z0;
  p.lambda_d = lambda_d;
  p.delta = delta;
  return p;
}
}  // namespace

TEST_CASE("Lambda assembly") {
  const auto p = make_params(2, 1.0, 1.0, 1.0);
  CHECK(spectral::assemble_lambda(Mode{0, 0, 0.0}, p) == doctest::Approx(0.0));
  CHECK(spectral::assemble_lambda(Mode{1, 0, 3.0}, make_params(2, 2.0, 1.0, 1.0)) ==
        doctest::Approx(1.5));
  CHECK(spectral::assemble_lambda(Mode{1, 1, 0.5}, p) == doctest::Approx(2.5));

  // strictly increasing in lambda and in j separately
  const auto base = spectral::assemble_lambda(Mode{1, 1, 2.0}, p);
  CHECK(spectral::assemble_lambda(Mode{1, 1, 2.5}, p) > base);
  CHECK(spectral::assemble_lambda(Mode{1, 2, 2.0}, p) > base);
}

TEST_CASE("gap constants") {
  auto [db1, ex1] = spectral::gap_constants(make_params(2, 1.0, 2.0, 10.0));
  CHECK(db1 == doctest::Approx(2.0));
  CHECK(ex1 == doctest::Approx(2.0));
  auto [db2, ex2] = spectral::gap_constants(make_params(2, 1.0, 2.0, 1.0));
  CHECK(db2 == doctest::Approx(2.0));
  CHECK(ex2 == doctest::Approx(1.0));
  auto [db3, ex3] = spectral::gap_constants(make_params(3, 1.0, 3.0, 100.0));
  CHECK(db3 == doctest::Approx(2.0));
}

TEST_CASE("toy spectrum construction") {
  const auto p = make_params(2, 1.0, 1.5, 1.0);
  const auto t = spectral::toy_spectrum(p, 0, 3, 7);
  REQUIRE(t.modes.size() == 3);
  CHECK(t.modes[0].mode.k == 0);
  CHECK(t.modes[0].mode.lambda == doctest::Approx(0.0));
  CHECK(t.modes[0].cross_section_eigenvalue == doctest::Approx(0.0));
  CHECK(t.modes[1].mode.lambda == doctest::Approx(1.5));
  CHECK(t.modes[2].mode.lambda == doctest::Approx(3.0));

  const auto full = spectral::toy_spectrum(p, 3, 4, 7);
  CHECK(full.modes.size() == 4u * 4u);
  // sorted by Lambda, k reassigned to position
  for (std::size_t i = 0; i + 1 < full.modes.size(); ++i) {
    CHECK(full.modes[i].cross_section_eigenvalue <=
          full.modes[i + 1].cross_section_eigenvalue);
    CHECK(full.modes[i].mode.k == static_cast<int>(i));
  }
  // every generated nonzero-weight mode admits hypergeometric parameters
  for (const auto& e : full.modes) {
    if (e.mode.j >= 1) {
      const auto hp = calabi::ode::hyper_params(e.mode, p.n);
      CHECK(hp.beta <= 1e-12);
    }
  }
}

TEST_CASE("toy spectrum determinism") {
  const auto p = make_params(3, 1.3, 0.8, 0.5);
  const auto a = spectral::toy_spectrum(p, 2, 5, 42);
  const auto b = spectral::toy_spectrum(p, 2, 5, 42);
  CHECK(spectral::spectrum_to_string(a) == spectral::spectrum_to_string(b));
}

TEST_CASE("spectrum serialization round trip") {
  const auto p = make_params(2, 1.5, 1.25, 2.0);
  const auto t = spectral::toy_spectrum(p, 2, 3, 9);
  const std::string text = spectral::spectrum_to_string(t);
  const auto back = spectral::spectrum_from_string(text);
  CHECK(spectral::spectrum_to_string(back) == text);
  CHECK(back.params.n == p.n);
  CHECK(back.params.z0 == p.z0);
  CHECK(back.seed == 9u);
  REQUIRE(back.modes.size() == t.modes.size());
  for (std::size_t i = 0; i < t.modes.size(); ++i) {
    CHECK(back.modes[i].mode.j == t.modes[i].mode.j);
    CHECK(back.modes[i].mode.lambda == t.modes[i].mode.lambda);
  }

  CHECK_THROWS_AS(spectral::spectrum_from_string("0 0 0 0\n"), std::invalid_argument);
  CHECK_THROWS_AS(spectral::spectrum_from_string("# n=2 z0=1 lambda_D=1 delta=1\n"
                                                 "k j lambda Lambda\nbroken row\n"),
                  std::invalid_argument);
}

TEST_CASE("fourier decay bound") {
  CHECK(spectral::fourier_decay_bound(4.0, 2, 1.0) == doctest::Approx(1.0 / 16.0));
  CHECK(spectral::fourier_decay_bound(1.0, 7, 3.5) == doctest::Approx(3.5));
  double prev = spectral::fourier_decay_bound(2.0, 3, 1.0);
  for (double lam : {4.0, 8.0, 64.0, 1024.0}) {
    const double cur = spectral::fourier_decay_bound(lam, 3, 1.0);
    CHECK(cur < prev);
    prev = cur;
  }
  CHECK_THROWS_AS(spectral::fourier_decay_bound(0.0, 2, 1.0), std::domain_error);
}

TEST_CASE("eigenfunction sup-norm exponents") {
  CHECK(spectral::eigenfunction_sup_exponent(2, 0) == doctest::Approx(1.0));
  CHECK(spectral::eigenfunction_sup_exponent(3, 0) == doctest::Approx(1.5));
  CHECK(spectral::eigenfunction_sup_exponent(2, 1) == doctest::Approx(1.5));
  for (int n : {2, 3, 4, 5}) {
    CHECK(spectral::eigenfunction_sup_exponent(n, 0) == doctest::Approx(0.5 * n));
  }
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(spectral::validate_params(make_params(1, 1.0, 1.0, 1.0)),
                  std::invalid_argument);
  CHECK_THROWS_AS(spectral::validate_params(make_params(2, 0.0, 1.0, 1.0)),
                  std::invalid_argument);
  CHECK_THROWS_AS(spectral::validate_params(make_params(2, 1.0, -1.0, 1.0)),
                  std::invalid_argument);
  CHECK_THROWS_AS(spectral::toy_spectrum(make_params(2, 1.0, 1.0, 1.0), -1, 3, 0),
                  std::invalid_argument);
}
