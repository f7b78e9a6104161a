#include "topochain/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "parallel.hpp"
#include "topochain/errors.hpp"
#include "topochain/tridiagonal.hpp"

namespace topochain {

Spectrum eigendecompose(const ChainHamiltonian& h) {
  auto eig = linalg::tridiagonal_eigen(h.diagonal(), h.offdiagonal());
  return Spectrum{eig.n, std::move(eig.values), std::move(eig.vectors)};
}

double edge_weight(std::span<const double> v, std::size_t n_edge_sites) noexcept {
  const std::size_t n = v.size();
  double w = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (i < n_edge_sites || i + n_edge_sites >= n) w += v[i] * v[i];
  }
  return w;
}

std::size_t edge_window(ModelKind kind) noexcept { return 2 * cell_size(kind); }

namespace {

void flag_edges(SpectrumTrace& trace, std::size_t edge_sites) {
  trace.edge_flags.resize(trace.spectra.size());
  for (std::size_t t = 0; t < trace.spectra.size(); ++t) {
    const Spectrum& sp = trace.spectra[t];
    trace.edge_flags[t].assign(sp.n, false);
    for (std::size_t j = 0; j < sp.n; ++j)
      trace.edge_flags[t][j] = edge_weight(sp.vector(j), edge_sites) >= 0.5;
  }
}

}  // namespace

SpectrumTrace instantaneous_spectrum(const Schedule& s, ModelKind kind, std::size_t cells,
                                     std::size_t n_times, unsigned threads) {
  if (n_times < 2) throw InvalidParameter("instantaneous_spectrum needs n_times >= 2");
  s.validate(kind);
  SpectrumTrace trace;
  trace.times.resize(n_times);
  for (std::size_t i = 0; i < n_times; ++i)
    trace.times[i] = s.period * static_cast<double>(i) / static_cast<double>(n_times - 1);
  trace.spectra.resize(n_times);
  detail::parallel_for(n_times, threads, [&](std::size_t i) {
    trace.spectra[i] = eigendecompose(sample_schedule(s, kind, cells, trace.times[i]));
  });
  flag_edges(trace, edge_window(kind));
  return trace;
}

SpectrumTrace spectrum_sweep(std::span<const double> coords,
                             const std::vector<ChainHamiltonian>& chains, std::size_t edge_sites,
                             unsigned threads) {
  if (coords.size() != chains.size()) throw InvalidDimension("sweep coordinate count mismatch");
  for (std::size_t i = 1; i < coords.size(); ++i)
    if (!(coords[i] > coords[i - 1])) throw InvalidParameter("sweep coordinates must increase");
  SpectrumTrace trace;
  trace.times.assign(coords.begin(), coords.end());
  trace.spectra.resize(chains.size());
  detail::parallel_for(chains.size(), threads,
               [&](std::size_t i) { trace.spectra[i] = eigendecompose(chains[i]); });
  flag_edges(trace, edge_sites);
  return trace;
}

double isolation_gap(const SpectrumTrace& trace, std::size_t first_level, std::size_t last_level) {
  if (first_level > last_level) throw InvalidParameter("isolation_gap: empty level range");
  double gap = std::numeric_limits<double>::infinity();
  for (const Spectrum& sp : trace.spectra) {
    if (last_level >= sp.n) throw InvalidDimension("isolation_gap: level out of range");
    const auto& e = sp.eigenvalues;
    if (first_level > 0) gap = std::min(gap, e[first_level] - e[first_level - 1]);
    if (last_level + 1 < sp.n) gap = std::min(gap, e[last_level + 1] - e[last_level]);
  }
  return gap;
}

namespace {

double xi_norm_sq(double lambda, std::size_t cells) {
  const double l2 = lambda * lambda;
  if (l2 == 0.0) return 1.0;
  return (1.0 - l2) / (1.0 - std::pow(l2, static_cast<double>(cells)));
}

void require_cells(std::size_t cells) {
  if (cells == 0) throw InvalidDimension("cell count L must be at least 1");
}

}  // namespace

EdgeStatePair analytic_edge_states(double a, double b, std::size_t cells) {
  require_cells(cells);
  if (!(std::abs(a) < std::abs(b))) {
    throw PhaseDomainError("edge states need |a| < |b| (got a=" + std::to_string(a) +
                           ", b=" + std::to_string(b) + ")");
  }
  EdgeStatePair pair;
  pair.lambda = -a / b;
  pair.xi_norm = std::sqrt(xi_norm_sq(pair.lambda, cells));
  const std::size_t n = 2 * cells;
  pair.left.assign(n, 0.0);
  pair.right.assign(n, 0.0);
  double power = 1.0;
  for (std::size_t k = 0; k < cells; ++k) {
    pair.left[2 * k] = pair.xi_norm * power;
    pair.right[n - 1 - 2 * k] = pair.xi_norm * power;
    power *= pair.lambda;
  }
  return pair;
}

TrimerEdgeStates trimer_edge_states(double a, double c, std::size_t cells) {
  require_cells(cells);
  if (!(std::abs(a) < std::abs(c))) {
    throw PhaseDomainError("trimer edge states need |a| < |c| (got a=" + std::to_string(a) +
                           ", c=" + std::to_string(c) + ")");
  }
  TrimerEdgeStates st;
  st.lambda = a / c;
  st.xi_norm = std::sqrt(xi_norm_sq(st.lambda, cells));
  const std::size_t n = 3 * cells;
  st.left_plus.assign(n, 0.0);
  st.left_minus.assign(n, 0.0);
  st.right_plus.assign(n, 0.0);
  st.right_minus.assign(n, 0.0);
  const double amp = st.xi_norm / std::sqrt(2.0);
  double plus = 1.0;   // (-lambda)^k
  double minus = 1.0;  // (+lambda)^k
  for (std::size_t k = 0; k < cells; ++k) {
    const std::size_t left_cell = 3 * k;
    const std::size_t right_cell = 3 * (cells - 1 - k);
    st.left_plus[left_cell] = amp * plus;
    st.left_plus[left_cell + 1] = amp * plus;
    st.left_minus[left_cell] = amp * minus;
    st.left_minus[left_cell + 1] = -amp * minus;
    st.right_plus[right_cell + 1] = amp * plus;
    st.right_plus[right_cell + 2] = amp * plus;
    st.right_minus[right_cell + 1] = amp * minus;
    st.right_minus[right_cell + 2] = -amp * minus;
    plus *= -st.lambda;
    minus *= st.lambda;
  }
  return st;
}

double localization_length(double a, double b) {
  if (!(std::abs(a) < std::abs(b))) {
    throw PhaseDomainError("localization length needs |a| < |b|");
  }
  if (a == 0.0) return 0.0;
  return 1.0 / (std::log(std::abs(b)) - std::log(std::abs(a)));
}

double dot(std::span<const double> x, std::span<const double> y) noexcept {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

double subspace_weight(std::span<const double> v,
                       const std::vector<std::span<const double>>& subspace) noexcept {
  double w = 0.0;
  for (const auto& u : subspace) {
    const double p = dot(u, v);
    w += p * p;
  }
  return w;
}

}  // namespace topochain
