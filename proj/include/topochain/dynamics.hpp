#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "topochain/integrators.hpp"
#include "topochain/schedule.hpp"

namespace topochain {

/// Normalized single-excitation state.
class StateVector {
 public:
  /// Throws InvalidParameter unless | ||amps|| - 1 | <= 1e-9.
  explicit StateVector(cvec amplitudes);

  /// |e_site> with 1-based site.
  static StateVector basis(std::size_t n_sites, std::size_t site);
  /// Normalized sum_k weights[k] |e_{sites[k]}> (1-based sites).
  static StateVector superposition(std::size_t n_sites, std::span<const std::size_t> sites,
                                   std::span<const cplx> weights);
  /// Normalizes an arbitrary non-zero vector.
  static StateVector normalized(cvec amplitudes);
  static StateVector from_real(std::span<const double> amplitudes);

  std::size_t size() const noexcept { return amps_.size(); }
  const cvec& amplitudes() const noexcept { return amps_; }
  cplx operator[](std::size_t i) const noexcept { return amps_[i]; }
  double norm() const noexcept;

 private:
  cvec amps_;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<StateVector> states;
  /// sz[record][site]
  std::vector<std::vector<double>> sz;

  std::size_t size() const noexcept { return times.size(); }
};

/// Integrates i d(psi)/dt = H(t) psi from t0 to t1 and records n_records >= 2
/// uniformly spaced samples, both ends included. After every integrator step
/// the state is renormalized; a norm drift above 1e-6 raises IntegrationError.
Trajectory evolve(const HamiltonianProvider& provider, const StateVector& psi0, double t0,
                  double t1, const IntegratorConfig& cfg, std::size_t n_records);

/// Static Hamiltonian, psi0 = |e_flip_site> (1-based), integrated over [0, t1].
Trajectory quench(const ChainHamiltonian& h, std::size_t flip_site, double t1,
                  const IntegratorConfig& cfg, std::size_t n_records);

/// Drives the chain with sample_schedule over [0, cycles T].
Trajectory pump(const Schedule& s, ModelKind kind, std::size_t cells, const StateVector& psi0,
                const IntegratorConfig& cfg, std::size_t n_records);

/// 2 |psi_j|^2 - 1 per site.
std::vector<double> sigma_z(const StateVector& psi);

/// |<target|psi>|^2.
double transfer_fidelity(const StateVector& psi, const StateVector& target);

/// e^{-iHt} psi0 from the eigendecomposition of a static chain.
StateVector exact_propagate(const ChainHamiltonian& h, const StateVector& psi0, double t);

}  // namespace topochain
