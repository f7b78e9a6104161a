#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "topochain/dynamics.hpp"
#include "topochain/errors.hpp"
#include "topochain/integrators.hpp"

using namespace topochain;

namespace {

IntegratorConfig with_method(IntegratorMethod m) {
  IntegratorConfig cfg;
  cfg.method = m;
  return cfg;
}

const IntegratorMethod kMethods[] = {IntegratorMethod::bdf, IntegratorMethod::rk4};

double infidelity(const StateVector& a, const StateVector& b) { return 1.0 - transfer_fidelity(a, b); }

}  // namespace

TEST_SUITE("dynamics") {
  TEST_CASE("state vector") {
    CHECK_THROWS_AS(StateVector(cvec{1.0, 1.0}), InvalidParameter);
    CHECK_THROWS_AS(StateVector::basis(4, 0), InvalidDimension);
    CHECK_THROWS_AS(StateVector::basis(4, 5), InvalidDimension);
    const auto s = StateVector::superposition(3, std::vector<std::size_t>{1, 2}, std::vector<cplx>{1.0, 1.0});
    CHECK(s.norm() == doctest::Approx(1.0));
    CHECK(std::abs(s[0]) == doctest::Approx(1 / std::sqrt(2.0)));
    CHECK_THROWS(StateVector::normalized(cvec(3, 0.0)));
  }

  TEST_CASE("sigma_z and fidelity") {
    CHECK(sigma_z(StateVector::basis(4, 1)) == std::vector<double>{1, -1, -1, -1});
    const auto sup = StateVector::normalized(cvec{1.0, 1.0});
    for (double z : sigma_z(sup)) CHECK(std::abs(z) < 1e-15);
    const auto three = StateVector::normalized(cvec{1.0, 1.0, 0.0});
    const auto z3 = sigma_z(three);
    CHECK(std::abs(z3[0]) < 1e-15);
    CHECK(std::abs(z3[1]) < 1e-15);
    CHECK(z3[2] == -1.0);
    CHECK(transfer_fidelity(three, three) == doctest::Approx(1.0));
    CHECK(transfer_fidelity(StateVector::basis(3, 1), StateVector::basis(3, 2)) == 0.0);
  }

  TEST_CASE("zero Hamiltonian leaves the state alone") {
    const auto zero = build_ssh(3, 0.0, 0.0);
    const auto psi0 = StateVector::normalized(cvec{{0.3, 0.1}, 0.2, 0.0, {0.0, -0.5}, 0.1, 0.7});
    for (auto m : kMethods) {
      const auto traj = evolve([&](double) { return zero; }, psi0, 0.0, 10.0, with_method(m), 11);
      for (const auto& s : traj.states) CHECK(infidelity(s, psi0) <= 1e-14);
    }
  }

  TEST_CASE("two-site Rabi oscillation") {
    const double a = 0.37;
    const auto h = ChainHamiltonian({0.0, 0.0}, {a});
    for (auto m : kMethods) {
      const auto traj = quench(h, 1, 20.0, with_method(m), 81);
      for (std::size_t k = 0; k < traj.size(); ++k) {
        const double p2 = std::norm(traj.states[k][1]);
        CHECK(std::abs(p2 - std::pow(std::sin(a * traj.times[k]), 2)) <= 1e-6);
      }
    }
  }

  TEST_CASE("static chain matches the exact propagator") {
    const auto h = build_ssh(7, 0.1, 1.0);
    const auto psi0 = StateVector::basis(14, 1);
    const auto exact = oracle::propagate(h, psi0.amplitudes(), 100.0);
    for (auto m : kMethods) {
      const auto traj = quench(h, 1, 100.0, with_method(m), 11);
      CHECK(1.0 - oracle::overlap_sq(exact, traj.states.back().amplitudes()) <= 1e-6);
    }
    const auto mine = exact_propagate(h, psi0, 100.0);
    CHECK(1.0 - oracle::overlap_sq(exact, mine.amplitudes()) <= 1e-12);
  }

  TEST_CASE("trajectory invariants") {
    std::mt19937_64 rng(8);
    const auto h = oracle::random_chain(rng, 9, false);
    const auto traj = quench(h, 4, 30.0, {}, 61);
    for (std::size_t k = 1; k < traj.size(); ++k) CHECK(traj.times[k] > traj.times[k - 1]);
    for (const auto& row : traj.sz) {
      double occ = 0.0;
      for (double z : row) {
        CHECK(z >= -1.0);
        CHECK(z <= 1.0);
        occ += (1 + z) / 2;
      }
      CHECK(std::abs(occ - 1.0) <= 1e-8);
    }
    for (const auto& s : traj.states) CHECK(std::abs(s.norm() - 1.0) <= 1e-9);
  }

  TEST_CASE("quench examples") {
    const auto decoupled = quench(build_ssh(7, 0.0, 1.0), 1, 50.0, {}, 51);
    for (const auto& row : decoupled.sz) CHECK(row[0] == 1.0);

    const auto uniform = quench(build_ssh(7, 1.0, 1.0), 1, 30.0, {}, 301);
    double best = -1.0;
    for (const auto& row : uniform.sz) best = std::max(best, row[13]);
    CHECK(best > -0.5);
    CHECK_THROWS_AS(quench(build_ssh(7, 1.0, 1.0), 15, 1.0, {}, 2), InvalidDimension);
    CHECK_THROWS_AS(quench(build_ssh(7, 1.0, 1.0), 1, 1.0, {}, 1), InvalidParameter);
  }

  TEST_CASE("time reversal on a static chain") {
    const auto h = build_rice_mele(5, 0.4, 1.0, 0.3);
    const ChainHamiltonian minus_h({-0.3, 0.3, -0.3, 0.3, -0.3, 0.3, -0.3, 0.3, -0.3, 0.3},
                                   {-0.4, -1.0, -0.4, -1.0, -0.4, -1.0, -0.4, -1.0, -0.4});
    const auto psi0 = StateVector::basis(10, 3);
    for (auto m : kMethods) {
      const auto fwd = evolve([&](double) { return h; }, psi0, 0.0, 40.0, with_method(m), 2);
      const auto back = evolve([&](double) { return minus_h; }, fwd.states.back(), 0.0, 40.0, with_method(m), 2);
      CHECK(transfer_fidelity(back.states.back(), psi0) >= 1 - 1e-8);
    }
  }

  TEST_CASE("pump with the plain sequence at T = 100") {
    const auto psi0 = StateVector::basis(14, 1);
    const auto traj = pump(standard_pump(100.0), ModelKind::rice_mele, 7, psi0, {}, 201);
    const double f = transfer_fidelity(traj.states.back(), StateVector::basis(14, 14));
    // reference from an independent scipy BDF run (rtol 1e-10): 0.52908
    CHECK(f == doctest::Approx(0.52908).epsilon(5e-5));

    IntegratorConfig tight;
    tight.rel_tol = 1e-9;
    tight.abs_tol = 1e-11;
    const auto refined = pump(standard_pump(100.0), ModelKind::rice_mele, 7, psi0, tight, 2);
    CHECK(infidelity(refined.states.back(), traj.states.back()) <= 1e-6);

    const auto longer = pump(standard_pump(200.0), ModelKind::rice_mele, 7, psi0, {}, 2);
    CHECK(transfer_fidelity(longer.states.back(), StateVector::basis(14, 14)) >= f - 1e-3);
  }

  TEST_CASE("bdf dense output") {
    const auto h = build_ssh(3, 0.5, 1.0);
    BdfIntegrator integ([&](double) { return h; }, 0.0, cvec{1.0, 0.0, 0.0, 0.0, 0.0, 0.0}, {});
    for (int k = 0; k < 20; ++k) integ.step(50.0);
    const auto at_end = integ.interpolate(integ.time());
    for (std::size_t i = 0; i < 6; ++i) CHECK(std::abs(at_end[i] - integ.state()[i]) <= 1e-14);
    const double mid = 0.5 * (integ.time() + integ.previous_time());
    const auto exact = oracle::propagate(h, {1.0, 0.0, 0.0, 0.0, 0.0, 0.0}, mid);
    CHECK(1.0 - oracle::overlap_sq(exact, integ.interpolate(mid)) <= 1e-6);
    CHECK(integ.order() >= 1);
    CHECK(integ.steps() == 20);
  }

  TEST_CASE("shifted tridiagonal solve against dense solve") {
    std::mt19937_64 rng(21);
    const auto h = oracle::random_chain(rng, 12, false);
    cvec b(12);
    for (std::size_t i = 0; i < 12; ++i) b[i] = {std::sin(1.0 + i), std::cos(2.0 * i)};
    const double c = 0.7;
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(12, 12) + cplx(0.0, c) * oracle::dense(h).cast<cplx>();
    Eigen::VectorXcd rhs(12);
    for (int i = 0; i < 12; ++i) rhs(i) = b[static_cast<std::size_t>(i)];
    const Eigen::VectorXcd x = m.partialPivLu().solve(rhs);
    solve_shifted_tridiagonal(h, c, b);
    for (int i = 0; i < 12; ++i) CHECK(std::abs(x(i) - b[static_cast<std::size_t>(i)]) <= 1e-12);
  }

  TEST_CASE("integrator config validation") {
    IntegratorConfig bad;
    bad.rel_tol = 0.0;
    CHECK_THROWS_AS(bad.validate(), InvalidParameter);
    bad = {};
    bad.max_step = -1.0;
    CHECK_THROWS_AS(bad.validate(), InvalidParameter);
    CHECK(integrator_method_from_string("rk4") == IntegratorMethod::rk4);
    CHECK_THROWS(integrator_method_from_string("euler"));
    const auto h = build_ssh(2, 1.0, 1.0);
    CHECK_THROWS_AS(quench(h, 1, 1.0, bad, 2), InvalidParameter);
  }
}
