#include "topochain/dynamics.hpp"

#include <cmath>
#include <string>

#include "topochain/errors.hpp"
#include "topochain/spectra.hpp"

namespace topochain {

namespace {

double vec_norm(const cvec& v) {
  double s = 0.0;
  for (const cplx& z : v) s += std::norm(z);
  return std::sqrt(s);
}

}  // namespace

StateVector::StateVector(cvec amplitudes) : amps_(std::move(amplitudes)) {
  if (amps_.empty()) throw InvalidDimension("empty state vector");
  for (const cplx& z : amps_)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
      throw NumericError("state vector has non-finite amplitudes");
  if (std::abs(vec_norm(amps_) - 1.0) > 1e-9)
    throw InvalidParameter("state vector is not normalized (norm " +
                           std::to_string(vec_norm(amps_)) + ")");
}

StateVector StateVector::basis(std::size_t n_sites, std::size_t site) {
  if (site < 1 || site > n_sites)
    throw InvalidDimension("site " + std::to_string(site) + " outside 1.." +
                           std::to_string(n_sites));
  cvec v(n_sites);
  v[site - 1] = 1.0;
  return StateVector(std::move(v));
}

StateVector StateVector::superposition(std::size_t n_sites, std::span<const std::size_t> sites,
                                       std::span<const cplx> weights) {
  if (sites.size() != weights.size() || sites.empty())
    throw InvalidParameter("superposition needs matching, non-empty sites and weights");
  cvec v(n_sites);
  for (std::size_t k = 0; k < sites.size(); ++k) {
    if (sites[k] < 1 || sites[k] > n_sites)
      throw InvalidDimension("site " + std::to_string(sites[k]) + " outside 1.." +
                             std::to_string(n_sites));
    v[sites[k] - 1] += weights[k];
  }
  return normalized(std::move(v));
}

StateVector StateVector::normalized(cvec amplitudes) {
  const double n = vec_norm(amplitudes);
  if (!(n > 0.0) || !std::isfinite(n)) throw InvalidParameter("cannot normalize zero vector");
  for (cplx& z : amplitudes) z /= n;
  return StateVector(std::move(amplitudes));
}

StateVector StateVector::from_real(std::span<const double> amplitudes) {
  return normalized(cvec(amplitudes.begin(), amplitudes.end()));
}

double StateVector::norm() const noexcept { return vec_norm(amps_); }

std::vector<double> sigma_z(const StateVector& psi) {
  std::vector<double> out(psi.size());
  for (std::size_t j = 0; j < psi.size(); ++j) out[j] = 2.0 * std::norm(psi[j]) - 1.0;
  return out;
}

double transfer_fidelity(const StateVector& psi, const StateVector& target) {
  if (psi.size() != target.size()) throw InvalidDimension("fidelity of mismatched states");
  cplx overlap{};
  for (std::size_t j = 0; j < psi.size(); ++j) overlap += std::conj(target[j]) * psi[j];
  return std::min(1.0, std::norm(overlap));
}

namespace {

constexpr double kDriftLimit = 1e-6;

void record(Trajectory& traj, double t, cvec amps) {
  StateVector s = StateVector::normalized(std::move(amps));
  traj.sz.push_back(sigma_z(s));
  traj.times.push_back(t);
  traj.states.push_back(std::move(s));
}

template <class Integrator>
double renormalize(Integrator& integ) {
  const double n = vec_norm(integ.state());
  if (!(std::abs(n - 1.0) <= kDriftLimit)) {
    throw IntegrationError("norm drift " + std::to_string(n - 1.0) + " at t=" +
                           std::to_string(integ.time()) + " exceeds 1e-6");
  }
  integ.rescale(1.0 / n);
  return n;
}

}  // namespace

Trajectory evolve(const HamiltonianProvider& provider, const StateVector& psi0, double t0,
                  double t1, const IntegratorConfig& cfg, std::size_t n_records) {
  cfg.validate();
  if (!(t1 > t0)) throw InvalidParameter("evolve needs t1 > t0");
  if (n_records < 2) throw InvalidParameter("evolve needs n_records >= 2");
  const std::size_t n = psi0.size();
  if (provider(t0).size() != n) throw InvalidDimension("Hamiltonian and state sizes differ");

  std::vector<double> grid(n_records);
  for (std::size_t k = 0; k < n_records; ++k)
    grid[k] = t0 + (t1 - t0) * static_cast<double>(k) / static_cast<double>(n_records - 1);
  grid.back() = t1;

  Trajectory traj;
  traj.times.reserve(n_records);
  traj.states.reserve(n_records);
  traj.sz.reserve(n_records);
  record(traj, t0, psi0.amplitudes());

  if (cfg.method == IntegratorMethod::bdf) {
    BdfIntegrator integ(provider, t0, psi0.amplitudes(), cfg);
    std::size_t next = 1;
    while (next < n_records) {
      integ.step(t1);
      while (next < n_records && grid[next] <= integ.time()) {
        if (grid[next] == integ.time()) {
          record(traj, grid[next], integ.state());
        } else {
          record(traj, grid[next], integ.interpolate(grid[next]));
        }
        ++next;
      }
      renormalize(integ);
    }
  } else {
    Rk4Integrator integ(provider, t0, psi0.amplitudes(), cfg);
    for (std::size_t k = 1; k < n_records; ++k) {
      integ.advance_to(grid[k]);
      renormalize(integ);
      record(traj, grid[k], integ.state());
    }
  }
  return traj;
}

Trajectory quench(const ChainHamiltonian& h, std::size_t flip_site, double t1,
                  const IntegratorConfig& cfg, std::size_t n_records) {
  const StateVector psi0 = StateVector::basis(h.size(), flip_site);
  return evolve([&h](double) { return h; }, psi0, 0.0, t1, cfg, n_records);
}

Trajectory pump(const Schedule& s, ModelKind kind, std::size_t cells, const StateVector& psi0,
                const IntegratorConfig& cfg, std::size_t n_records) {
  s.validate(kind);
  const double t_end = s.duration();
  auto provider = [&s, kind, cells, t_end](double t) {
    return sample_schedule(s, kind, cells, std::min(std::max(t, 0.0), t_end));
  };
  return evolve(provider, psi0, 0.0, t_end, cfg, n_records);
}

StateVector exact_propagate(const ChainHamiltonian& h, const StateVector& psi0, double t) {
  const Spectrum sp = eigendecompose(h);
  const std::size_t n = sp.n;
  if (psi0.size() != n) throw InvalidDimension("Hamiltonian and state sizes differ");
  cvec out(n);
  for (std::size_t l = 0; l < n; ++l) {
    const auto v = sp.vector(l);
    cplx c{};
    for (std::size_t j = 0; j < n; ++j) c += v[j] * psi0[j];
    c *= std::polar(1.0, -sp.eigenvalues[l] * t);
    for (std::size_t j = 0; j < n; ++j) out[j] += c * v[j];
  }
  return StateVector::normalized(std::move(out));
}

}  // namespace topochain
