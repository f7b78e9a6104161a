#include "topochain/effective.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "topochain/errors.hpp"
#include "topochain/spectra.hpp"

namespace topochain {

ChainHamiltonian TwoLevelSystem::as_chain() const {
  return ChainHamiltonian({offset + u, offset - u}, {g});
}

std::array<std::array<double, 2>, 2> TwoLevelSystem::matrix() const noexcept {
  return {{{offset + u, g}, {g, offset - u}}};
}

namespace {

double xi_sq(double lambda, std::size_t cells) {
  const double l2 = lambda * lambda;
  if (l2 == 0.0) return 1.0;
  if (l2 == 1.0) return 1.0 / static_cast<double>(cells);
  return (1.0 - l2) / (1.0 - std::pow(l2, static_cast<double>(cells)));
}

double ipow(double x, std::size_t k) {
  double r = 1.0;
  for (std::size_t i = 0; i < k; ++i) r *= x;
  return r;
}

}  // namespace

double edge_coupling_formula(double a, double b, std::size_t cells) {
  if (cells == 0) throw InvalidDimension("cell count L must be at least 1");
  if (b == 0.0) throw InvalidParameter("intercell coupling b must be non-zero");
  const double lambda = -a / b;
  return xi_sq(lambda, cells) * a * ipow(lambda, cells - 1);
}

TwoLevelSystem reduce_rm(double a, double b, double u, std::size_t cells) {
  if (!(std::abs(a) < std::abs(b))) {
    throw PhaseDomainError("reduction needs |a| < |b| (got a=" + std::to_string(a) +
                           ", b=" + std::to_string(b) + ")");
  }
  return {u, edge_coupling_formula(a, b, cells), 0.0};
}

std::pair<double, double> lz_eigen(const TwoLevelSystem& sys) noexcept {
  const double r = std::hypot(sys.u, sys.g);
  return {sys.offset - r, sys.offset + r};
}

std::vector<LZSample> LZPath::sample(std::size_t n) const {
  if (n < 2) throw InvalidParameter("path sampling needs n >= 2");
  std::vector<LZSample> out(n);
  for (std::size_t k = 0; k < n; ++k)
    out[k] = at(duration * static_cast<double>(k) / static_cast<double>(n - 1));
  return out;
}

LZPath path_a(double alpha, double period) {
  return {"A", period, [alpha, period](double t) {
            const double phi = std::numbers::pi * t / period - std::numbers::pi;
            return LZSample{t, alpha * std::cos(phi), alpha * std::sin(phi)};
          }};
}

LZPath path_b(double alpha, double period) {
  return {"B", period, [alpha, period](double t) {
            return LZSample{t, alpha * (2.0 * t / period - 1.0), 0.0};
          }};
}

LZPath path_c(double alpha, double period, double theta) {
  if (!(std::abs(theta) < std::numbers::pi / 2))
    throw InvalidParameter("path C needs |theta| < pi/2");
  const double slope = std::tan(theta);
  return {"C", period, [alpha, period, slope](double t) {
            const double u = alpha * (2.0 * t / period - 1.0);
            return LZSample{t, u, slope * u};
          }};
}

LZPath path_from_schedule(const Schedule& s, ModelKind kind, std::size_t cells) {
  if (kind != ModelKind::ssh && kind != ModelKind::rice_mele)
    throw InvalidParameter("two-level paths are defined for ssh and rice_mele schedules");
  s.validate(kind);
  return {"schedule", s.duration(), [s, kind, cells](double t) {
            const double u = kind == ModelKind::rice_mele ? s.value(Param::u, t) : 0.0;
            return LZSample{t, u,
                            edge_coupling_formula(s.value(Param::a, t), s.value(Param::b, t), cells)};
          }};
}

std::string_view to_string(PathClass c) noexcept {
  switch (c) {
    case PathClass::around_critical: return "around-critical";
    case PathClass::through_critical: return "through-critical";
    case PathClass::no_crossing: return "no-crossing";
  }
  return "?";
}

PathClass classify_path(std::span<const LZSample> samples, double tol) {
  if (!(tol > 0.0)) throw InvalidParameter("classify_path needs tol > 0");
  if (samples.size() < 3) throw InvalidParameter("classify_path needs at least three samples");
  bool crossed = false;
  std::size_t prev = samples.size();
  for (std::size_t k = 0; k < samples.size(); ++k) {
    if (samples[k].u == 0.0) continue;
    if (prev != samples.size() && (samples[prev].u < 0.0) != (samples[k].u < 0.0)) {
      crossed = true;
      double g_star;
      if (k == prev + 1) {
        const LZSample& p = samples[prev];
        const LZSample& q = samples[k];
        const double s = p.u / (p.u - q.u);
        g_star = std::abs(p.g + s * (q.g - p.g));
      } else {
        g_star = INFINITY;
        for (std::size_t z = prev + 1; z < k; ++z) g_star = std::min(g_star, std::abs(samples[z].g));
      }
      if (g_star < tol) return PathClass::through_critical;
    }
    prev = k;
  }
  return crossed ? PathClass::around_critical : PathClass::no_crossing;
}

PathClass classify_path(std::span<const LZSample> samples) {
  double radius = 0.0;
  for (const auto& s : samples) radius = std::max(radius, std::hypot(s.u, s.g));
  return classify_path(samples, radius > 0.0 ? 1e-6 * radius : 1e-300);
}

std::array<std::array<double, 2>, 2> path_c_frame(double theta) {
  if (!(std::abs(theta) < std::numbers::pi / 2))
    throw InvalidParameter("path C frame is singular at |theta| = pi/2");
  const double c = std::cos(0.5 * theta);
  const double s = std::sin(0.5 * theta);
  return {{{c, s}, {-s, c}}};
}

Trajectory lz_evolve(const LZPath& path, const StateVector& psi0, const IntegratorConfig& cfg,
                     std::size_t n_records) {
  if (psi0.size() != 2) throw InvalidDimension("two-level evolution needs a 2-component state");
  auto provider = [&path](double t) {
    const LZSample s = path.at(t);
    return TwoLevelSystem{s.u, s.g, 0.0}.as_chain();
  };
  return evolve(provider, psi0, 0.0, path.duration, cfg, n_records);
}

TrimerBlocks reduce_trimer(double a, double b, double c, double u, double v, double w,
                           std::size_t cells) {
  if (a != b) throw InvalidParameter("trimer reduction needs the mirror-symmetric case a = b");
  if (cells == 0) throw InvalidDimension("cell count L must be at least 1");
  if (!(std::abs(a) < std::abs(c))) {
    throw PhaseDomainError("trimer reduction needs |a| < |c|");
  }
  TrimerBlocks blocks;
  blocks.lambda = a / c;
  blocks.xi_norm_sq = xi_sq(blocks.lambda, cells);
  const double prefactor =
      0.5 * (static_cast<double>(cells) * (a + v) + a) * blocks.xi_norm_sq;
  const double detuning = 0.25 * (u - w);
  const double mean = 0.25 * (u + w);
  blocks.plus = {detuning, prefactor * ipow(-blocks.lambda, cells - 1), mean + a + 0.5 * v};
  blocks.minus = {detuning, prefactor * ipow(blocks.lambda, cells - 1), mean - a + 0.5 * v};
  return blocks;
}

ReductionReport rm_reduction_report(double a, double b, double u, std::size_t cells) {
  const TwoLevelSystem sys = reduce_rm(a, b, u, cells);
  ReductionReport rep;
  rep.u = sys.u;
  rep.g = sys.g;
  rep.offset = sys.offset;
  rep.lambda = -a / b;
  rep.xi_norm_sq = xi_sq(rep.lambda, cells);
  const auto values = eigendecompose(build_rice_mele(cells, a, b, u)).eigenvalues;
  rep.exact_splitting = values[cells] - values[cells - 1];
  const double predicted = 2.0 * std::hypot(sys.u, sys.g);
  rep.rel_err = predicted > 0.0 ? std::abs(predicted - rep.exact_splitting) / predicted
                                : std::abs(rep.exact_splitting);
  return rep;
}

TrimerReductionReport trimer_reduction_report(double a, double c, double u, double v, double w,
                                              std::size_t cells) {
  TrimerReductionReport rep;
  rep.blocks = reduce_trimer(a, a, c, u, v, w, cells);
  const Spectrum sp = eigendecompose(build_trimer(cells, a, a, c, u, v, w));
  std::vector<std::size_t> idx(sp.n);
  std::iota(idx.begin(), idx.end(), 0);
  const std::size_t window = edge_window(ModelKind::trimer);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t x, std::size_t y) {
    return edge_weight(sp.vector(x), window) > edge_weight(sp.vector(y), window);
  });
  if (sp.n < 4) throw InvalidDimension("trimer report needs at least two cells");
  std::array<std::size_t, 4> edge{idx[0], idx[1], idx[2], idx[3]};
  std::sort(edge.begin(), edge.end());
  const auto& e = sp.eigenvalues;
  rep.exact_lower_splitting = e[edge[1]] - e[edge[0]];
  rep.exact_upper_splitting = e[edge[3]] - e[edge[2]];
  const double pred_plus = 2.0 * std::hypot(rep.blocks.plus.u, rep.blocks.plus.g);
  const double pred_minus = 2.0 * std::hypot(rep.blocks.minus.u, rep.blocks.minus.g);
  rep.rel_err_plus = std::abs(pred_plus - rep.exact_upper_splitting) / pred_plus;
  rep.rel_err_minus = std::abs(pred_minus - rep.exact_lower_splitting) / pred_minus;
  const TrimerEdgeStates st = trimer_edge_states(a, c, cells);
  rep.overlap_plus = dot(st.left_plus, st.right_plus);
  rep.overlap_minus = dot(st.left_minus, st.right_minus);
  return rep;
}

ReductionComparison compare_reduction(const Schedule& s, ModelKind kind, std::size_t cells,
                                      double t0, double t1, const IntegratorConfig& cfg,
                                      std::size_t n_records) {
  if (kind != ModelKind::ssh && kind != ModelKind::rice_mele)
    throw InvalidParameter("reduction comparison is defined for ssh and rice_mele schedules");
  s.validate(kind);
  if (!(t0 >= 0.0 && t1 > t0 && t1 <= s.duration()))
    throw InvalidParameter("comparison window must lie inside the schedule");
  const auto u_at = [&](double t) {
    return kind == ModelKind::rice_mele ? s.value(Param::u, t) : 0.0;
  };

  const auto start = analytic_edge_states(s.value(Param::a, t0), s.value(Param::b, t0), cells);
  const StateVector psi_full = StateVector::from_real(start.left);
  auto chain = [&](double t) { return sample_schedule(s, kind, cells, std::clamp(t, 0.0, s.duration())); };
  const Trajectory full = evolve(chain, psi_full, t0, t1, cfg, n_records);

  auto reduced_h = [&](double t) {
    const double tc = std::clamp(t, 0.0, s.duration());
    return TwoLevelSystem{u_at(tc),
                          edge_coupling_formula(s.value(Param::a, tc), s.value(Param::b, tc), cells),
                          0.0}
        .as_chain();
  };
  const cvec up{1.0, 0.0};
  const Trajectory reduced = evolve(reduced_h, StateVector(up), t0, t1, cfg, n_records);

  ReductionComparison out;
  for (std::size_t k = 0; k < full.size(); ++k) {
    const double t = full.times[k];
    const auto edges = analytic_edge_states(s.value(Param::a, t), s.value(Param::b, t), cells);
    double pl = 0.0, pr = 0.0;
    {
      cplx ol{}, orr{};
      const cvec& amps = full.states[k].amplitudes();
      for (std::size_t j = 0; j < amps.size(); ++j) {
        ol += edges.left[j] * amps[j];
        orr += edges.right[j] * amps[j];
      }
      pl = std::norm(ol);
      pr = std::norm(orr);
    }
    const double ql = std::norm(reduced.states[k][0]);
    const double qr = std::norm(reduced.states[k][1]);
    out.times.push_back(t);
    out.full.push_back({pl, pr});
    out.reduced.push_back({ql, qr});
    out.max_deviation = std::max({out.max_deviation, std::abs(pl - ql), std::abs(pr - qr)});
  }
  return out;
}

}  // namespace topochain
