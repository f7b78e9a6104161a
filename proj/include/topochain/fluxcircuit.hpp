#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "topochain/hermitian.hpp"

namespace topochain {

/// Gap-tunable flux qubit in the two-junction charge basis.
/// f_Sigma is tied to f_alpha by f_Sigma = kappa * f_alpha.
struct FluxQubitSpec {
  double EJ = 1.0;
  double EJ_over_EC = 50.0;
  /// Overrides EJ / EJ_over_EC when set (needed for EJ = 0).
  std::optional<double> EC;
  double alpha = 0.5;
  double beta = 0.05;
  double kappa = 50.0;
  int N = 1;
  int n = 1;
  int charge_cutoff = 15;

  double charging_energy() const;
  std::size_t dimension() const noexcept;
  /// Throws InvalidParameter / InvalidDimension on inconsistent fields.
  void validate() const;
};

using ChargeBasisOperator = linalg::HermitianMatrix;

/// Flattened index of Cooper-pair numbers (k, l), each in [-Nc, Nc].
std::size_t charge_index(const FluxQubitSpec& spec, int k, int l) noexcept;

/// C_alpha = cos(pi [beta (N - kappa f_alpha) + f_alpha]).
double alpha_loop_factor(const FluxQubitSpec& spec, double f_alpha) noexcept;

ChargeBasisOperator build_charge_hamiltonian(const FluxQubitSpec& spec, double f_alpha,
                                             double f_eps);

/// Exact derivative of the charge-basis Hamiltonian with respect to f_eps.
ChargeBasisOperator flux_derivative(const FluxQubitSpec& spec, double f_alpha, double f_eps);

/// Lowest n_levels eigenvalues, ascending.
std::vector<double> qubit_levels(const FluxQubitSpec& spec, double f_alpha, double f_eps,
                                 std::size_t n_levels);

/// E_1 - E_0 at f_eps = 0.
double qubit_gap(const FluxQubitSpec& spec, double f_alpha);

struct QubitCharacter {
  double gap = 0.0;
  double g_perp = 0.0;
  double g_par = 0.0;
};

/// g_perp = |<e|dH|g>|; |e> is rephased so that <e|dH|g> is real and
/// non-negative, then g_par = |<+|dH|->| with |pm> = (|e> pm |g>)/sqrt 2.
QubitCharacter coupling_elements(const FluxQubitSpec& spec, double f_alpha, double f_eps);

/// Everything a bias sweep row needs from one diagonalization.
struct FluxPoint {
  std::vector<double> levels;
  QubitCharacter character;
  double I0 = 0.0;
  double I1 = 0.0;
};

/// Lowest n_levels (>= 2) eigenvalues, coupling_elements and persistent_currents
/// at one flux point.
FluxPoint flux_point(const FluxQubitSpec& spec, double f_alpha, double f_eps, std::size_t n_levels);

/// (I0, I1) = (<g|dH|g>, <e|dH|e>).
std::pair<double, double> persistent_currents(const FluxQubitSpec& spec, double f_alpha,
                                              double f_eps);

/// max |H - P H P| for the charge parity P: (k, l) -> (-k, -l).
double parity_commutator_norm(const FluxQubitSpec& spec, double f_alpha, double f_eps);

}  // namespace topochain
