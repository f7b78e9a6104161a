#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "topochain/chain.hpp"
#include "topochain/schedule.hpp"

namespace topochain {

/// Ascending eigenvalues and matching unit eigenvectors (column-major).
struct Spectrum {
  std::size_t n = 0;
  std::vector<double> eigenvalues;
  std::vector<double> eigenvectors;

  std::span<const double> vector(std::size_t j) const noexcept {
    return {eigenvectors.data() + j * n, n};
  }
};

/// Full eigendecomposition of a chain. Largest-magnitude component of each
/// eigenvector is positive; ties go to the lowest index.
Spectrum eigendecompose(const ChainHamiltonian& h);

struct SpectrumTrace {
  std::vector<double> times;
  std::vector<Spectrum> spectra;
  /// edge_flags[t][level]
  std::vector<std::vector<bool>> edge_flags;
};

/// Number of sites at each end that count towards edge_weight when flagging
/// levels: two unit cells.
std::size_t edge_window(ModelKind kind) noexcept;

/// Spectra on n_times uniform samples of the first period [0, T], both ends
/// included. A level is edge-flagged when edge_weight(v, edge_window(kind)) >= 0.5.
/// Samples are independent and split over `threads` workers.
SpectrumTrace instantaneous_spectrum(const Schedule& s, ModelKind kind, std::size_t cells,
                                     std::size_t n_times, unsigned threads = 1);

/// Same flagging for an arbitrary list of chains (e.g. a static parameter sweep).
SpectrumTrace spectrum_sweep(std::span<const double> coords,
                             const std::vector<ChainHamiltonian>& chains, std::size_t edge_sites,
                             unsigned threads = 1);

/// Squared weight of v on the first and last n_edge_sites sites.
double edge_weight(std::span<const double> v, std::size_t n_edge_sites) noexcept;

/// Smallest separation, over all samples, between any level in
/// [first_level, last_level] and the nearest level outside that range.
double isolation_gap(const SpectrumTrace& trace, std::size_t first_level, std::size_t last_level);

/// Closed-form SSH edge states for |a| < |b|.
struct EdgeStatePair {
  std::vector<double> left;
  std::vector<double> right;
  double lambda = 0.0;
  double xi_norm = 1.0;
};

/// Left amplitude Xi lambda^{n-1} on site 2n-1, right Xi lambda^{L-n} on site 2n
/// (1-based), lambda = -a/b, Xi^2 = (1 - lambda^2)/(1 - lambda^{2L}).
/// Throws PhaseDomainError unless |a| < |b|.
EdgeStatePair analytic_edge_states(double a, double b, std::size_t cells);

/// Mirror-symmetric trimer (a = b) edge states, lambda = a/c:
/// left_plus/minus on the (A, B) sites of each cell, right_plus/minus on (B, C).
struct TrimerEdgeStates {
  std::vector<double> left_plus, left_minus, right_plus, right_minus;
  double lambda = 0.0;
  double xi_norm = 1.0;
};

/// Throws PhaseDomainError unless |a| < |c|.
TrimerEdgeStates trimer_edge_states(double a, double c, std::size_t cells);

/// xi = 1 / (ln|b| - ln|a|); zero at a = 0. Throws PhaseDomainError unless |a| < |b|.
double localization_length(double a, double b);

/// Sum over the orthonormal basis `subspace` of |<u_k|v>|^2, i.e. the squared
/// norm of the projection of v onto span(subspace).
double subspace_weight(std::span<const double> v,
                       const std::vector<std::span<const double>>& subspace) noexcept;

double dot(std::span<const double> x, std::span<const double> y) noexcept;

}  // namespace topochain
