#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <functional>
#include <limits>
#include <string_view>
#include <vector>

#include "topochain/chain.hpp"

namespace topochain {

using cplx = std::complex<double>;
using cvec = std::vector<cplx>;

/// Chain Hamiltonian as a function of time; re-sampled at every time the
/// integrator asks for.
using HamiltonianProvider = std::function<ChainHamiltonian(double)>;

enum class IntegratorMethod { bdf, rk4 };

std::string_view to_string(IntegratorMethod m) noexcept;
IntegratorMethod integrator_method_from_string(std::string_view name);

struct IntegratorConfig {
  double rel_tol = 1e-8;
  double abs_tol = 1e-10;
  double max_step = std::numeric_limits<double>::infinity();
  IntegratorMethod method = IntegratorMethod::bdf;

  /// Throws InvalidParameter for non-positive tolerances or max_step.
  void validate() const;
};

/// Variable-order (1-5), variable-step backward differentiation for
/// i d(psi)/dt = H(t) psi, in the quasi-constant step-size formulation with
/// modified divided differences. The equation is linear, so each corrector is
/// a single tridiagonal solve of (I + i c H(t_new)).
class BdfIntegrator {
 public:
  BdfIntegrator(HamiltonianProvider provider, double t0, cvec y0, const IntegratorConfig& cfg);

  /// Steps until time() == t_bound exactly (the last step is clipped).
  /// Throws IntegrationError when the step size underflows.
  void advance_to(double t_bound);

  /// One accepted step, never past t_bound.
  void step(double t_bound);

  /// Interpolating polynomial of the last step, valid on [previous_time(), time()].
  cvec interpolate(double t) const;

  double time() const noexcept { return t_; }
  double previous_time() const noexcept { return t_old_; }
  const cvec& state() const noexcept { return d_[0]; }
  /// Rescale the current state (and history) by a positive factor.
  void rescale(double factor) noexcept;

  std::size_t steps() const noexcept { return n_steps_; }
  std::size_t rejected() const noexcept { return n_rejected_; }
  int order() const noexcept { return order_; }

 private:
  static constexpr int kMaxOrder = 5;

  cvec rhs(double t, const cvec& y) const;
  double rms_scaled(const cvec& v, const std::vector<double>& scale) const;
  void change_d(int order, double factor);
  void initial_step(double t_bound);

  HamiltonianProvider provider_;
  IntegratorConfig cfg_;
  std::size_t n_;
  double t_;
  double t_old_;
  double h_abs_ = 0.0;
  bool h_initialised_ = false;
  int order_ = 1;
  int n_equal_steps_ = 0;
  std::array<cvec, kMaxOrder + 3> d_;
  std::array<double, kMaxOrder + 2> gamma_{}, alpha_{}, error_const_{};
  std::size_t n_steps_ = 0, n_rejected_ = 0;
};

/// Classical fourth-order Runge-Kutta with a fixed substep per advance_to call:
/// h * ||H||_inf <= 2 rel_tol^{1/4}, also capped by max_step. ||H|| is taken as
/// the largest of the values at the start, middle and end of the interval.
class Rk4Integrator {
 public:
  Rk4Integrator(HamiltonianProvider provider, double t0, cvec y0, const IntegratorConfig& cfg);

  void advance_to(double t_bound);
  double time() const noexcept { return t_; }
  const cvec& state() const noexcept { return y_; }
  void rescale(double factor) noexcept;
  std::size_t steps() const noexcept { return n_steps_; }

 private:
  HamiltonianProvider provider_;
  IntegratorConfig cfg_;
  double t_;
  cvec y_;
  std::size_t n_steps_ = 0;
};

/// Solve (I + i c H) x = b in place for a real symmetric tridiagonal H, with
/// partial pivoting.
void solve_shifted_tridiagonal(const ChainHamiltonian& h, double c, cvec& b);

}  // namespace topochain
