#include <doctest.h>

#include <cmath>
#include <numbers>
#include <numeric>

#include "oracles.hpp"
#include "topochain/chain.hpp"
#include "topochain/disorder.hpp"
#include "topochain/errors.hpp"
#include "topochain/schedule.hpp"

using namespace topochain;

namespace {

std::vector<double> vec(std::span<const double> s) { return {s.begin(), s.end()}; }

bool strictly_tridiagonal(const ChainHamiltonian& h) {
  const auto d = h.dense();
  const std::size_t n = h.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if ((i > j + 1 || j > i + 1) && d[i * n + j] != 0.0) return false;
  return true;
}

}  // namespace

TEST_SUITE("models") {
  TEST_CASE("ssh builder layout") {
    const auto h = build_ssh(1, 0.5, 1.0);
    CHECK(vec(h.diagonal()) == std::vector<double>{0.0, 0.0});
    CHECK(vec(h.offdiagonal()) == std::vector<double>{0.5});

    const auto h7 = build_ssh(7, 0.1, 1.0, 0.3);
    REQUIRE(h7.size() == 14);
    for (double w : h7.diagonal()) CHECK(w == 0.3);
    for (std::size_t k = 0; k < 13; ++k) CHECK(h7.offdiagonal()[k] == (k % 2 == 0 ? 0.1 : 1.0));
    CHECK_THROWS_AS(build_ssh(0, 0.1, 1.0), InvalidDimension);
  }

  TEST_CASE("four-site ssh matches the quartic roots") {
    // E^4 - (2a^2 + b^2) E^2 + a^4 = 0, solved as a quadratic in E^2
    const double a = 0.1, b = 1.0;
    const double p = 2 * a * a + b * b;
    const double disc = std::sqrt(p * p - 4 * std::pow(a, 4));
    const double lo = std::sqrt((p - disc) / 2), hi = std::sqrt((p + disc) / 2);
    const auto ev = oracle::eigenvalues(build_ssh(2, a, b));
    CHECK(ev[0] == doctest::Approx(-hi).epsilon(1e-12));
    CHECK(ev[1] == doctest::Approx(-lo).epsilon(1e-12));
    CHECK(ev[2] == doctest::Approx(lo).epsilon(1e-12));
    CHECK(ev[3] == doctest::Approx(hi).epsilon(1e-12));
    CHECK(lo == doctest::Approx(0.0099015).epsilon(1e-5));
    CHECK(hi == doctest::Approx(1.0099019).epsilon(1e-6));
  }

  TEST_CASE("rice-mele builder") {
    const auto h = build_rice_mele(7, 0.0, 1.0, 1.0);
    for (std::size_t j = 0; j < 14; ++j) CHECK(h.diagonal()[j] == (j % 2 == 0 ? 1.0 : -1.0));
    CHECK(h.offdiagonal()[0] == 0.0);
    const auto ev = oracle::eigenvalues(build_rice_mele(1, 1.0, 1.0, 3.0));
    CHECK(ev[0] == doctest::Approx(-std::sqrt(10.0)));
    CHECK(ev[1] == doctest::Approx(std::sqrt(10.0)));
    CHECK(build_rice_mele(5, 0.3, 0.8, 0.0) == build_ssh(5, 0.3, 0.8));
  }

  TEST_CASE("trimer builder") {
    const auto h = build_trimer(8, 1.0, 1.0, 2.0, 0.0, 0.0, 0.0);
    CHECK(h.size() == 24);
    const auto h2 = build_trimer(3, 0.1, 0.2, 0.3, 1.0, 2.0, 3.0);
    for (std::size_t j = 0; j < 9; ++j) CHECK(h2.diagonal()[j] == 1.0 + static_cast<double>(j % 3));
    for (std::size_t j = 0; j < 8; ++j) CHECK(h2.offdiagonal()[j] == doctest::Approx(0.1 * static_cast<double>(j % 3 + 1)).epsilon(1e-15));

    const auto ev = oracle::eigenvalues(build_trimer(1, 0.0, 0.0, 5.0, 0.2, -1.0, 3.0));
    CHECK(oracle::max_diff(ev, {-1.0, 0.2, 3.0}) == 0.0);

    // chiral pairing; with an even site count there is no exact zero mode, with an odd one there is
    const auto e6 = oracle::eigenvalues(build_trimer(2, 1.0, 1.0, 2.0, 0.0, 0.0, 0.0));
    double zero = 1.0;
    for (std::size_t k = 0; k < 6; ++k) {
      CHECK(e6[k] == doctest::Approx(-e6[5 - k]).epsilon(1e-12));
      zero = std::min(zero, std::abs(e6[k]));
    }
    CHECK(zero > 0.5);
    const auto e9 = oracle::eigenvalues(build_trimer(3, 1.0, 1.0, 2.0, 0.0, 0.0, 0.0));
    CHECK(std::abs(e9[4]) < 1e-12);
  }

  TEST_CASE("aah builder") {
    const auto flat = build_aah(4, 0.0, 0.37, 0.2, 1.0);
    for (double d : flat.diagonal()) CHECK(d == 0.0);
    for (double e : flat.offdiagonal()) CHECK(e == 1.0);

    const auto alt = build_aah(14, 1.0, 0.5, 0.0, 1.0);
    for (std::size_t j = 0; j < 14; ++j) CHECK(alt.diagonal()[j] == doctest::Approx(j % 2 == 0 ? -1.0 : 1.0));

    const double golden = (std::sqrt(5.0) - 1.0) / 2.0;
    const auto qp = build_aah(13, 1.0, golden, 0.0, 1.0);
    for (std::size_t j = 0; j < 13; ++j)
      CHECK(qp.diagonal()[j] == doctest::Approx(std::cos(2 * std::numbers::pi * golden * static_cast<double>(j + 1))));
    CHECK_THROWS_AS(build_aah(1, 1.0, 0.5, 0.0, 1.0), InvalidDimension);
  }

  TEST_CASE("builders are exactly tridiagonal") {
    CHECK(strictly_tridiagonal(build_ssh(6, 0.3, 1.0, 0.2)));
    CHECK(strictly_tridiagonal(build_rice_mele(6, 0.3, 1.0, 0.7)));
    CHECK(strictly_tridiagonal(build_trimer(4, 0.3, 0.5, 1.0, 0.1, 0.2, 0.3)));
    CHECK(strictly_tridiagonal(build_aah(9, 1.0, 0.618, 0.1, 1.0)));
  }

  TEST_CASE("invalid chain input") {
    CHECK_THROWS_AS(ChainHamiltonian({0.0, 0.0}, {}), InvalidDimension);
    CHECK_THROWS_AS(ChainHamiltonian({}, {}), InvalidDimension);
    CHECK_THROWS_AS(ChainHamiltonian({0.0, NAN}, {1.0}), NumericError);
    CHECK_THROWS_AS(build_ssh(2, INFINITY, 1.0), NumericError);
  }

  TEST_CASE("disorder") {
    const auto h = build_ssh(7, 0.1, 1.0);
    CHECK(apply_disorder(h, {0.0, 42, true, true}) == h);
    const DisorderSpec spec{0.01, 42, true, true};
    const auto d1 = apply_disorder(h, spec);
    const auto d2 = apply_disorder(h, spec);
    CHECK(d1 == d2);
    CHECK_FALSE(d1 == h);
    CHECK(apply_disorder(h, {0.01, 43, true, true}) != d1);
    // input untouched, diagonal untouched when not targeted
    CHECK(h == build_ssh(7, 0.1, 1.0));
    const auto off_only = apply_disorder(h, {0.01, 42, false, true});
    for (double x : off_only.diagonal()) CHECK(x == 0.0);
    CHECK_THROWS_AS(apply_disorder(h, {-0.1, 1, true, true}), InvalidParameter);
    CHECK_THROWS_AS(apply_disorder(h, {NAN, 1, true, true}), InvalidParameter);
  }

  TEST_CASE("gaussian draws have the right moments") {
    const std::size_t n = 200000;
    double sum = 0.0, sq = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double x = gaussian_draw(7, DisorderTarget::offdiagonal, i);
      sum += x;
      sq += x * x;
    }
    const double mean = sum / static_cast<double>(n);
    const double sd = std::sqrt(sq / static_cast<double>(n) - mean * mean);
    CHECK(std::abs(mean) <= 5.0 / std::sqrt(static_cast<double>(n)));
    CHECK(std::abs(sd - 1.0) <= 0.02);
    // keyed, not sequential
    CHECK(gaussian_draw(7, DisorderTarget::diagonal, 3) != gaussian_draw(7, DisorderTarget::offdiagonal, 3));
    CHECK(gaussian_draw(7, DisorderTarget::diagonal, 3) == gaussian_draw(7, DisorderTarget::diagonal, 3));
  }

  TEST_CASE("disorder noise statistics through apply_disorder") {
    const std::size_t cells = 50000;
    const double sigma = 0.01;
    const auto h = build_ssh(cells, 0.0, 0.0);
    const auto d = apply_disorder(h, {sigma, 9, true, true});
    double sum = 0.0, sq = 0.0;
    std::size_t n = 0;
    for (double x : d.diagonal()) sum += x, sq += x * x, ++n;
    for (double x : d.offdiagonal()) sum += x, sq += x * x, ++n;
    const double mean = sum / static_cast<double>(n);
    CHECK(std::abs(mean) <= 5 * sigma / std::sqrt(static_cast<double>(n)));
    CHECK(std::abs(std::sqrt(sq / static_cast<double>(n) - mean * mean) - sigma) <= 0.02 * sigma);
  }

  TEST_CASE("schedule evaluation") {
    const auto pump = standard_pump(100.0);
    auto h0 = sample_schedule(pump, ModelKind::rice_mele, 7, 0.0);
    CHECK(h0 == build_ssh(7, 0.0, 1.0));
    const auto half = sample_schedule(pump, ModelKind::rice_mele, 7, 50.0);
    CHECK(half.offdiagonal()[0] == doctest::Approx(2.0));
    CHECK(std::abs(half.diagonal()[0]) < 1e-14);

    const auto opt = sample_schedule(optimized_pump(100.0), ModelKind::rice_mele, 7, 50.0);
    CHECK(opt.offdiagonal()[0] == doctest::Approx(1.0));
    CHECK(std::abs(opt.diagonal()[0]) < 1e-14);

    const auto tri = sample_schedule(trimer_bell_transfer(1000.0), ModelKind::trimer, 7, 0.0);
    CHECK(tri.offdiagonal()[0] == doctest::Approx(0.1));
    CHECK(tri.offdiagonal()[1] == doctest::Approx(0.1));
    CHECK(tri.offdiagonal()[2] == doctest::Approx(1.0));
    CHECK(tri.diagonal()[0] == doctest::Approx(2.0));
    CHECK(tri.diagonal()[1] == doctest::Approx(2.0));
    CHECK(tri.diagonal()[2] == doctest::Approx(0.0));

    CHECK_THROWS_AS(sample_schedule(pump, ModelKind::rice_mele, 7, 100.5), InvalidParameter);
    CHECK_THROWS_AS(sample_schedule(pump, ModelKind::trimer, 7, 1.0), SchemaError);
    CHECK_THROWS_AS(sample_schedule(pump, ModelKind::aah, 7, 1.0), SchemaError);
  }

  TEST_CASE("schedule validation names offending parameters") {
    auto s = standard_pump(10.0);
    try {
      s.validate(ModelKind::ssh);
      FAIL("expected a schema error");
    } catch (const SchemaError& e) {
      REQUIRE(e.violations().size() == 1);
      CHECK(e.violations()[0].find("'u'") != std::string::npos);
    }
    s.params.erase(Param::b);
    CHECK_THROWS_AS(s.validate(ModelKind::rice_mele), SchemaError);
    auto bad = standard_pump(0.0);
    CHECK_THROWS_AS(bad.validate(ModelKind::rice_mele), InvalidParameter);
  }

  TEST_CASE("periodic schedules repeat entrywise") {
    for (const auto& s : {standard_pump(37.0, 2), optimized_pump(37.0, 2)}) {
      CHECK(s.periodic());
      for (double t : {0.0, 3.1, 11.0, 18.5, 36.0}) {
        const auto a = sample_schedule(s, ModelKind::rice_mele, 4, t);
        const auto b = sample_schedule(s, ModelKind::rice_mele, 4, t + 37.0);
        CHECK(oracle::max_diff(vec(a.diagonal()), vec(b.diagonal())) <= 1e-12);
        CHECK(oracle::max_diff(vec(a.offdiagonal()), vec(b.offdiagonal())) <= 1e-12);
      }
    }
    CHECK_FALSE(trimer_bell_transfer(100.0).periodic());
  }

  TEST_CASE("term forms") {
    const ParamTerm ramp{TermForm::ramp, 2.0, 1.0, 1.0, 0.0};
    CHECK(ramp(25.0, 100.0) == doctest::Approx(1.5));
    const ParamTerm c{TermForm::constant, 0.0, 0.7, 1.0, 0.0};
    CHECK(c(12.0, 100.0) == 0.7);
    CHECK(term_form_from_string("sin") == TermForm::sine);
    CHECK_THROWS_AS(term_form_from_string("tan"), SchemaError);
    CHECK_THROWS_AS(param_from_string("z"), SchemaError);
  }
}
