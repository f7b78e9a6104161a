#include <doctest.h>

#include <cmath>

#include "topochain/couplings.hpp"
#include "topochain/errors.hpp"

using namespace topochain;

namespace {

// Power series sum_k (-1)^k (x/2)^(2k+n) / (k! (k+n)!), fine for small x.
double series_j(int n, double x) {
  double term = std::pow(x / 2, n) / std::tgamma(n + 1.0);
  double sum = term;
  for (int k = 1; k < 60; ++k) {
    term *= -(x / 2) * (x / 2) / (k * static_cast<double>(k + n));
    sum += term;
  }
  return sum;
}

}  // namespace

TEST_SUITE("couplings") {
  TEST_CASE("bessel values") {
    CHECK(bessel_j(0, 0.0) == 1.0);
    CHECK(bessel_j(1, 0.0) == 0.0);
    CHECK(bessel_j(0, 1.0) == doctest::Approx(0.765197686557967).epsilon(1e-14));
    CHECK(std::abs(bessel_j(0, 1.0) - series_j(0, 1.0)) <= 1e-14);
    CHECK(std::abs(bessel_j(3, 0.05) - series_j(3, 0.05)) <= 1e-18);
  }

  TEST_CASE("bessel against the standard library") {
    double worst = 0.0;
    for (int n = 0; n <= 30; ++n)
      for (double x = 0.0; x < 49.9; x += 0.37)
        worst = std::max(worst, std::abs(bessel_j(n, x) - std::cyl_bessel_j(static_cast<double>(n), x)));
    CHECK(worst <= 1e-12);
  }

  TEST_CASE("bessel symmetries") {
    for (int n = 0; n <= 6; ++n) {
      const double sign = n % 2 == 0 ? 1.0 : -1.0;
      for (double x : {0.05, 0.7, 3.3, 12.0}) {
        CHECK(bessel_j(-n, x) == doctest::Approx(sign * bessel_j(n, x)).epsilon(1e-14));
        CHECK(bessel_j(n, -x) == doctest::Approx(sign * bessel_j(n, x)).epsilon(1e-14));
      }
    }
    CHECK_THROWS_AS(bessel_j(0, 50.0), InvalidParameter);
    CHECK_THROWS_AS(bessel_j(0, NAN), InvalidParameter);
  }

  TEST_CASE("recurrence and parseval") {
    for (double x : {0.5, 1.0, 2.0})
      for (int n = 1; n <= 10; ++n)
        CHECK(std::abs(bessel_j(n - 1, x) + bessel_j(n + 1, x) - 2 * n / x * bessel_j(n, x)) <= 1e-10);
    for (double x : {0.0, 0.3, 1.0, 2.0}) {
      double s = 0.0;
      for (int n = -40; n <= 40; ++n) s += bessel_j(n, x) * bessel_j(n, x);
      CHECK(std::abs(s - 1.0) <= 1e-10);
    }
  }

  TEST_CASE("identical-frequency coupling") {
    CHECK(effective_coupling_identical(0.7, 0.0, 0.0).value == std::complex<double>(0.7, 0.0));
    for (double a : {0.25, 0.5, 1.0}) {
      const auto c = effective_coupling_identical(1.3, a, a);
      CHECK(std::abs(c.value.real() - 1.3 * std::cyl_bessel_j(0.0, 2 * a)) <= 1e-10);
      CHECK(c.value.imag() == 0.0);
      CHECK(c.scheme == CouplingScheme::identical_frequencies);
    }
    CHECK(effective_coupling_identical(1.0, 0.5, 0.5).value.real() == doctest::Approx(0.76520).epsilon(1e-5));
    for (double x : {0.1, 0.9, 1.7})
      for (double y : {0.0, 0.4, 2.0}) {
        const double xy = effective_coupling_identical(1.0, x, y).value.real();
        CHECK(xy == doctest::Approx(effective_coupling_identical(1.0, y, x).value.real()).epsilon(1e-15));
        CHECK(std::abs(effective_coupling_identical(1.0, x, y, 20).value.real() - xy) <= 1e-12);
        CHECK(std::abs(xy) <= 1.0);
      }
    CHECK_THROWS_AS(effective_coupling_identical(1.0, 0.1, 0.1, -1), InvalidParameter);
  }

  TEST_CASE("frequency-matched coupling") {
    CHECK(effective_coupling_matched(1.0, 0.4, 0.0).value == std::complex<double>(0.0, 0.0));
    const auto p = effective_coupling_matched(1.0, 0.0, 1.8412);
    CHECK(std::abs(p.value) == doctest::Approx(0.5819).epsilon(1e-4));
    CHECK(p.value.real() == 0.0);
    const auto q = effective_coupling_matched(2.0, 1.8412, 0.0, BondParity::q);
    CHECK(q.value.imag() == doctest::Approx(2.0 * 0.5819).epsilon(1e-4));
    CHECK(q.value.real() == 0.0);
    CHECK(to_string(CouplingScheme::frequency_matched) == "matched");
    CHECK(coupling_scheme_from_string("identical") == CouplingScheme::identical_frequencies);
  }
}
