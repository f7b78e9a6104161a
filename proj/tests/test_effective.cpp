#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "topochain/effective.hpp"
#include "topochain/errors.hpp"
#include "topochain/spectra.hpp"

using namespace topochain;

namespace {

std::pair<double, double> brute_2x2(const TwoLevelSystem& s) {
  Eigen::Matrix2d m;
  const auto a = s.matrix();
  m << a[0][0], a[0][1], a[1][0], a[1][1];
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(m);
  return {es.eigenvalues()(0), es.eigenvalues()(1)};
}

LZPath constant_path(double u, double g, double duration) {
  return {"const", duration, [u, g](double t) { return LZSample{t, u, g}; }};
}

}  // namespace

TEST_SUITE("effective") {
  TEST_CASE("rice-mele reduction") {
    CHECK(reduce_rm(0.0, 1.0, 0.3, 7).g == 0.0);
    const auto sys = reduce_rm(0.1, 1.0, 0.0, 7);
    CHECK(sys.g == doctest::Approx(9.9e-8).epsilon(1e-10));
    CHECK(sys.offset == 0.0);
    for (double a : {0.1, 0.5}) {
      const auto r = rm_reduction_report(a, 1.0, 0.0, 7);
      const double half = r.exact_splitting / 2;
      CHECK(std::abs(std::abs(r.g) - half) / std::abs(r.g) <= 0.05);
    }
    CHECK_THROWS_AS(reduce_rm(1.0, 1.0, 0.0, 7), PhaseDomainError);
  }

  TEST_CASE("coupling sign under a -> -a") {
    // g = Xi^2 a lambda^(L-1): the explicit factor a flips too, so the product
    // carries (-1)^L
    for (std::size_t L : {2u, 3u, 6u, 7u}) {
      const double g = reduce_rm(0.3, 1.0, 0.0, L).g;
      const double gm = reduce_rm(-0.3, 1.0, 0.0, L).g;
      const double parity = L % 2 == 0 ? 1.0 : -1.0;
      CHECK(g * gm == doctest::Approx(parity * g * g).epsilon(1e-14));
    }
  }

  TEST_CASE("agreement improves as lambda^L shrinks") {
    const std::size_t L = 7;
    double previous = INFINITY;
    for (double target : {1e-2, 1e-4, 1e-6}) {
      const double a = std::pow(target, 1.0 / L);
      const double err = rm_reduction_report(a, 1.0, 0.0, L).rel_err;
      CHECK(err < previous);
      previous = err;
    }
  }

  TEST_CASE("two-level eigenvalues") {
    CHECK(lz_eigen({0.0, 0.0, 0.0}) == std::pair<double, double>{0.0, 0.0});
    const auto e = lz_eigen({3.0, 4.0, 0.0});
    CHECK(e.first == -5.0);
    CHECK(e.second == 5.0);
    for (const TwoLevelSystem s : {TwoLevelSystem{0.3, -0.2, 1.0}, TwoLevelSystem{-2.0, 0.5, -0.5}}) {
      const auto mine = lz_eigen(s);
      const auto ref = brute_2x2(s);
      CHECK(mine.first == doctest::Approx(ref.first).epsilon(1e-14));
      CHECK(mine.second == doctest::Approx(ref.second).epsilon(1e-14));
    }
  }

  TEST_CASE("two-level energies follow the mid-gap branch of the pump") {
    // early in the cycle (t = T/16) the chain is deep in the topological phase
    const double t = 100.0 / 16;
    const auto pump_s = standard_pump(100.0);
    const double a = pump_s.value(Param::a, t), u = pump_s.value(Param::u, t);
    REQUIRE(std::pow(a, 7) <= 1e-4);
    const auto e = lz_eigen(reduce_rm(a, 1.0, u, 7));
    const auto sp = eigendecompose(sample_schedule(pump_s, ModelKind::rice_mele, 7, t));
    CHECK(std::abs(e.first - sp.eigenvalues[6]) <= 0.05 * std::abs(sp.eigenvalues[6]));
    CHECK(std::abs(e.second - sp.eigenvalues[7]) <= 0.05 * std::abs(sp.eigenvalues[7]));
  }

  TEST_CASE("path classification") {
    CHECK(classify_path(path_a(1.0, 200.0).sample(401)) == PathClass::around_critical);
    CHECK(classify_path(path_b(1.0, 200.0).sample(401)) == PathClass::through_critical);
    CHECK(classify_path(path_c(1.0, 200.0, 0.5).sample(401)) == PathClass::through_critical);
    CHECK(classify_path(constant_path(1.0, 0.1, 10.0).sample(11)) == PathClass::no_crossing);
    // stretching the time axis changes nothing
    auto samples = path_a(1.0, 200.0).sample(101);
    for (auto& s : samples) s.t *= 7.5;
    CHECK(classify_path(samples) == PathClass::around_critical);
    CHECK_THROWS_AS(classify_path(samples, 0.0), InvalidParameter);
    CHECK_THROWS_AS(classify_path(path_a(1.0, 1.0).sample(2), 1e-3), InvalidParameter);
    CHECK(to_string(PathClass::around_critical) == "around-critical");
  }

  TEST_CASE("path-C frame diagonalizes the path-C Hamiltonian") {
    const auto id = path_c_frame(0.0);
    CHECK(id[0][0] == 1.0);
    CHECK(id[0][1] == 0.0);
    CHECK(id[1][1] == 1.0);
    for (double theta : {std::numbers::pi / 6, std::numbers::pi / 4, std::numbers::pi / 3}) {
      const double u = 0.8;
      const double h[2][2] = {{u, u * std::tan(theta)}, {u * std::tan(theta), -u}};
      const auto f = path_c_frame(theta);
      double d[2][2] = {};
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
          for (int k = 0; k < 2; ++k)
            for (int l = 0; l < 2; ++l) d[i][j] += f[i][k] * h[k][l] * f[j][l];
      CHECK(std::abs(d[0][1]) <= 1e-12);
      CHECK(std::abs(d[1][0]) <= 1e-12);
      CHECK(d[0][0] == doctest::Approx(u / std::cos(theta)).epsilon(1e-12));
      CHECK(d[1][1] == doctest::Approx(-u / std::cos(theta)).epsilon(1e-12));
    }
    const auto near = path_c_frame(std::numbers::pi / 2 - 1e-9);
    CHECK(near[0][0] == doctest::Approx(1 / std::sqrt(2.0)));
    CHECK(near[0][1] == doctest::Approx(1 / std::sqrt(2.0)));
    CHECK_THROWS_AS(path_c_frame(std::numbers::pi / 2), InvalidParameter);
  }

  TEST_CASE("trimer reduction") {
    const auto zero = reduce_trimer(0.0, 0.0, 1.0, 0.5, 2.0, 0.1, 4);
    CHECK(zero.plus.g == 0.0);
    CHECK(zero.minus.g == 0.0);
    const auto t0 = reduce_trimer(0.1, 0.1, 1.0, 2.0, 2.0, 0.0, 7);
    CHECK(t0.plus.g == doctest::Approx(7.326e-6).epsilon(1e-4));
    CHECK(t0.plus.u == doctest::Approx(0.5));
    CHECK(t0.plus.offset == doctest::Approx(0.5 + 0.1 + 1.0));
    CHECK(t0.minus.offset == doctest::Approx(0.5 - 0.1 + 1.0));

    const auto sym = reduce_trimer(0.3, 0.3, 1.0, 0.7, 0.4, 0.7, 5);
    CHECK(sym.plus.u == 0.0);
    const auto e = lz_eigen(sym.plus);
    CHECK(e.second - e.first == doctest::Approx(2 * std::abs(sym.plus.g)));
    CHECK_THROWS_AS(reduce_trimer(0.3, 0.4, 1.0, 0, 0, 0, 5), InvalidParameter);
    CHECK_THROWS_AS(reduce_trimer(1.0, 1.0, 1.0, 0, 0, 0, 5), PhaseDomainError);
  }

  TEST_CASE("two-level evolution") {
    IntegratorConfig cfg;
    const auto left = StateVector::basis(2, 1);
    const auto a = lz_evolve(path_a(1.0, 200.0), left, cfg);
    CHECK(std::norm(a.states.back()[1]) >= 0.999);
    const auto b = lz_evolve(path_b(1.0, 200.0), left, cfg);
    CHECK(std::norm(b.states.back()[0]) >= 1 - 1e-12);

    const double g = 0.21;
    const auto rabi = lz_evolve(constant_path(0.0, g, 30.0), left, cfg, 61);
    for (std::size_t k = 0; k < rabi.size(); ++k)
      CHECK(std::abs(std::norm(rabi.states[k][1]) - std::pow(std::sin(g * rabi.times[k]), 2)) <= 1e-6);
  }

  TEST_CASE("reduced against full dynamics") {
    const auto deep = compare_reduction(optimized_pump(100.0), ModelKind::rice_mele, 7, 0.0, 10.0, {}, 101);
    CHECK(deep.max_deviation <= 0.05);

    Schedule frozen;
    frozen.period = 50.0;
    frozen.params = {{Param::a, {TermForm::constant, 0.0, 0.0, 1.0, 0.0}},
                     {Param::b, {TermForm::constant, 0.0, 1.0, 1.0, 0.0}},
                     {Param::u, {TermForm::sine, 0.5, 0.0, 1.0, 0.0}}};
    const auto flat = compare_reduction(frozen, ModelKind::rice_mele, 5, 0.0, 50.0, {}, 51);
    CHECK(flat.max_deviation <= 1e-8);
    CHECK_THROWS_AS(compare_reduction(standard_pump(100.0), ModelKind::rice_mele, 7, 0.0, 50.0, {}, 51),
                    PhaseDomainError);
  }
}
