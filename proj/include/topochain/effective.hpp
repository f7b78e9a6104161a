#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "topochain/dynamics.hpp"
#include "topochain/schedule.hpp"

namespace topochain {

/// offset * I + [[u, g], [g, -u]] in the {|L>, |R>} basis.
struct TwoLevelSystem {
  double u = 0.0;
  double g = 0.0;
  double offset = 0.0;

  ChainHamiltonian as_chain() const;
  std::array<std::array<double, 2>, 2> matrix() const noexcept;
};

/// Edge-subspace reduction of the Rice-Mele chain: {u, Xi^2 a lambda^{L-1}, 0}.
/// The coupling keeps the sign of lambda^{L-1}. Throws PhaseDomainError unless |a| < |b|.
TwoLevelSystem reduce_rm(double a, double b, double u, std::size_t cells);

/// Xi^2 a lambda^{L-1} evaluated for any a, b != 0 (no phase check); the
/// |lambda| = 1 limit uses Xi^2 = 1/L.
double edge_coupling_formula(double a, double b, std::size_t cells);

/// (E_minus, E_plus) = offset -/+ sqrt(u^2 + g^2).
std::pair<double, double> lz_eigen(const TwoLevelSystem& sys) noexcept;

struct LZSample {
  double t = 0.0;
  double u = 0.0;
  double g = 0.0;
};

/// Parametric path (u(t), g(t)) on [0, duration].
struct LZPath {
  std::string name;
  double duration = 1.0;
  std::function<LZSample(double)> at;

  /// n >= 2 uniform samples including both ends.
  std::vector<LZSample> sample(std::size_t n) const;
};

/// u = alpha cos(pi t/T - pi), g = alpha sin(pi t/T - pi).
LZPath path_a(double alpha, double period);
/// u = alpha (2t/T - 1), g = 0.
LZPath path_b(double alpha, double period);
/// u = alpha (2t/T - 1), g = tan(theta) u.
LZPath path_c(double alpha, double period, double theta);
/// u(t) from the schedule, g(t) from edge_coupling_formula(a(t), b(t), L).
LZPath path_from_schedule(const Schedule& s, ModelKind kind, std::size_t cells);

enum class PathClass { around_critical, through_critical, no_crossing };

std::string_view to_string(PathClass c) noexcept;

/// Each sign change of u between consecutive samples is a crossing; g is
/// interpolated linearly to the zero of u. through_critical when some crossing
/// has |g| < tol, around_critical when crossings exist but all stay at or beyond
/// tol, no_crossing otherwise. Throws InvalidParameter for tol <= 0 or fewer
/// than three samples.
PathClass classify_path(std::span<const LZSample> samples, double tol);
/// tol = 1e-6 * max sqrt(u^2 + g^2) over the samples.
PathClass classify_path(std::span<const LZSample> samples);

/// Frame whose rows are the eigenvectors of the path-C Hamiltonian:
/// (cos(theta/2), sin(theta/2)) and (-sin(theta/2), cos(theta/2)).
/// Throws InvalidParameter unless |theta| < pi/2.
std::array<std::array<double, 2>, 2> path_c_frame(double theta);

/// Two-level evolution along the path; sz has two columns (L, R).
Trajectory lz_evolve(const LZPath& path, const StateVector& psi0, const IntegratorConfig& cfg,
                     std::size_t n_records = 201);

/// Upper and lower trimer edge blocks for the mirror case a = b:
/// plus = {(u - w)/4, g_+, (u + w)/4 + a + v/2}, minus = {(u - w)/4, g_-, (u + w)/4 - a + v/2},
/// g_pm = [L(a + v) + a]/2 Xi^2 (-/+ lambda)^{L-1}, lambda = a/c.
struct TrimerBlocks {
  TwoLevelSystem plus;
  TwoLevelSystem minus;
  double lambda = 0.0;
  double xi_norm_sq = 1.0;
};

/// Throws InvalidParameter if a != b and PhaseDomainError unless |a| < |c|.
TrimerBlocks reduce_trimer(double a, double b, double c, double u, double v, double w,
                           std::size_t cells);

/// Closed-form reduction next to the exact edge-level splitting of the chain.
struct ReductionReport {
  double u = 0.0;
  double g = 0.0;
  double offset = 0.0;
  double lambda = 0.0;
  double xi_norm_sq = 1.0;
  double exact_splitting = 0.0;
  double rel_err = 0.0;
};

/// Exact splitting = gap between the two middle levels of the 2L-site chain;
/// rel_err = |2 sqrt(u^2 + g^2) - exact| / (2 sqrt(u^2 + g^2)).
ReductionReport rm_reduction_report(double a, double b, double u, std::size_t cells);

struct TrimerReductionReport {
  TrimerBlocks blocks;
  double exact_upper_splitting = 0.0;
  double exact_lower_splitting = 0.0;
  double rel_err_plus = 0.0;
  double rel_err_minus = 0.0;
  /// <L+|R+> and <L-|R-> of the closed-form states (they are not orthogonal).
  double overlap_plus = 0.0;
  double overlap_minus = 0.0;
};

/// Exact in-gap pairs are the four levels with the largest two-cell edge
/// weight, split into the lower and the upper two.
TrimerReductionReport trimer_reduction_report(double a, double c, double u, double v, double w,
                                              std::size_t cells);

struct ReductionComparison {
  std::vector<double> times;
  std::vector<std::array<double, 2>> full;     // (P_L, P_R) of the chain
  std::vector<std::array<double, 2>> reduced;  // (P_L, P_R) of the two-level model
  double max_deviation = 0.0;
};

/// Evolves the chain from the closed-form |L> of (a(t0), b(t0)) and the two-level
/// model from (1, 0) over [t0, t1]; projects the chain state on the edge states
/// of the instantaneous (a(t), b(t)). Throws PhaseDomainError when a record
/// leaves |a| < |b|.
ReductionComparison compare_reduction(const Schedule& s, ModelKind kind, std::size_t cells,
                                      double t0, double t1, const IntegratorConfig& cfg,
                                      std::size_t n_records = 201);

}  // namespace topochain
