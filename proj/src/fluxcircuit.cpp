#include "topochain/fluxcircuit.hpp"

#include <cmath>
#include <numbers>

#include "topochain/errors.hpp"

namespace topochain {

using linalg::cplx;

double FluxQubitSpec::charging_energy() const {
  if (EC) return *EC;
  return EJ / EJ_over_EC;
}

std::size_t FluxQubitSpec::dimension() const noexcept {
  const auto d = static_cast<std::size_t>(2 * charge_cutoff + 1);
  return d * d;
}

void FluxQubitSpec::validate() const {
  if (charge_cutoff < 1) throw InvalidDimension("charge cutoff must be at least 1");
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw InvalidParameter("alpha must be positive");
  if (!std::isfinite(beta) || !std::isfinite(kappa)) throw InvalidParameter("non-finite beta/kappa");
  if (!(EJ >= 0.0) || !std::isfinite(EJ)) throw InvalidParameter("EJ must be finite and >= 0");
  if (EC) {
    if (!(*EC > 0.0) || !std::isfinite(*EC)) throw InvalidParameter("EC must be positive");
  } else {
    if (!(EJ > 0.0)) throw InvalidParameter("EJ must be positive unless EC is given explicitly");
    if (!(EJ_over_EC > 0.0) || !std::isfinite(EJ_over_EC))
      throw InvalidParameter("EJ_over_EC must be positive");
  }
}

std::size_t charge_index(const FluxQubitSpec& spec, int k, int l) noexcept {
  const int nc = spec.charge_cutoff;
  const auto d = static_cast<std::size_t>(2 * nc + 1);
  return static_cast<std::size_t>(k + nc) * d + static_cast<std::size_t>(l + nc);
}

double alpha_loop_factor(const FluxQubitSpec& spec, double f_alpha) noexcept {
  const double f_sigma = spec.kappa * f_alpha;
  return std::cos(std::numbers::pi * (spec.beta * (spec.N - f_sigma) + f_alpha));
}

ChargeBasisOperator build_charge_hamiltonian(const FluxQubitSpec& spec, double f_alpha,
                                             double f_eps) {
  spec.validate();
  const int nc = spec.charge_cutoff;
  const double ec = spec.charging_energy();
  const double a = spec.alpha;
  const double kin = 4.0 * ec / (1.0 + 4.0 * a);
  const double constant = 2.0 * (1.0 + a) * spec.EJ;
  const cplx twin = -a * spec.EJ * alpha_loop_factor(spec, f_alpha) *
                    std::polar(1.0, std::numbers::pi * (spec.n - f_eps));
  ChargeBasisOperator h(spec.dimension());
  for (int k = -nc; k <= nc; ++k) {
    for (int l = -nc; l <= nc; ++l) {
      const std::size_t i = charge_index(spec, k, l);
      const double kk = k, ll = l;
      h.set(i, i, kin * ((1.0 + 2.0 * a) * kk * kk - 4.0 * a * kk * ll + (1.0 + 2.0 * a) * ll * ll) +
                      constant);
      if (k < nc) h.set(charge_index(spec, k + 1, l), i, -0.5 * spec.EJ);
      if (l < nc) h.set(charge_index(spec, k, l + 1), i, -0.5 * spec.EJ);
      if (k < nc && l < nc) h.set(charge_index(spec, k + 1, l + 1), i, twin);
    }
  }
  return h;
}

ChargeBasisOperator flux_derivative(const FluxQubitSpec& spec, double f_alpha, double f_eps) {
  spec.validate();
  const int nc = spec.charge_cutoff;
  const cplx twin = cplx(0.0, std::numbers::pi) * spec.alpha * spec.EJ *
                    alpha_loop_factor(spec, f_alpha) *
                    std::polar(1.0, std::numbers::pi * (spec.n - f_eps));
  ChargeBasisOperator dh(spec.dimension());
  for (int k = -nc; k < nc; ++k)
    for (int l = -nc; l < nc; ++l)
      dh.set(charge_index(spec, k + 1, l + 1), charge_index(spec, k, l), twin);
  return dh;
}

std::vector<double> qubit_levels(const FluxQubitSpec& spec, double f_alpha, double f_eps,
                                 std::size_t n_levels) {
  const auto h = build_charge_hamiltonian(spec, f_alpha, f_eps);
  if (n_levels > h.size()) throw InvalidDimension("more levels requested than charge states");
  auto eig = linalg::hermitian_eigen(h, 0);
  eig.values.resize(n_levels);
  return eig.values;
}

double qubit_gap(const FluxQubitSpec& spec, double f_alpha) {
  const auto levels = qubit_levels(spec, f_alpha, 0.0, 2);
  return std::max(0.0, levels[1] - levels[0]);
}

FluxPoint flux_point(const FluxQubitSpec& spec, double f_alpha, double f_eps, std::size_t n_levels) {
  const auto h = build_charge_hamiltonian(spec, f_alpha, f_eps);
  if (n_levels < 2 || n_levels > h.size())
    throw InvalidDimension("level count must lie between 2 and the number of charge states");
  const auto dh = flux_derivative(spec, f_alpha, f_eps);
  const auto eig = linalg::hermitian_eigen(h, 2);
  const auto g = eig.column(0);
  std::vector<cplx> e(eig.column(1).begin(), eig.column(1).end());
  const cplx m = dh.expectation(e, g);
  if (std::abs(m) > 0.0) {
    const cplx phase = m / std::abs(m);
    for (cplx& z : e) z *= phase;
  }
  const std::size_t n = e.size();
  std::vector<cplx> plus(n), minus(n);
  for (std::size_t i = 0; i < n; ++i) {
    plus[i] = (e[i] + g[i]) / std::numbers::sqrt2;
    minus[i] = (e[i] - g[i]) / std::numbers::sqrt2;
  }
  FluxPoint out;
  out.levels.assign(eig.values.begin(), eig.values.begin() + static_cast<std::ptrdiff_t>(n_levels));
  out.character.gap = std::max(0.0, eig.values[1] - eig.values[0]);
  out.character.g_perp = std::abs(dh.expectation(e, g));
  out.character.g_par = std::abs(dh.expectation(plus, minus));
  out.I0 = dh.expectation(g, g).real();
  out.I1 = dh.expectation(e, e).real();
  return out;
}

QubitCharacter coupling_elements(const FluxQubitSpec& spec, double f_alpha, double f_eps) {
  return flux_point(spec, f_alpha, f_eps, 2).character;
}

std::pair<double, double> persistent_currents(const FluxQubitSpec& spec, double f_alpha,
                                              double f_eps) {
  const FluxPoint p = flux_point(spec, f_alpha, f_eps, 2);
  return {p.I0, p.I1};
}

double parity_commutator_norm(const FluxQubitSpec& spec, double f_alpha, double f_eps) {
  const auto h = build_charge_hamiltonian(spec, f_alpha, f_eps);
  const std::size_t n = h.size();
  double r = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      r = std::max(r, std::abs(h(i, j) - h(n - 1 - i, n - 1 - j)));
  return r;
}

}  // namespace topochain
