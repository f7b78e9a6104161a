#include "topochain/disorder.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "topochain/errors.hpp"

namespace topochain {

namespace {

std::uint64_t mix(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double unit_open_closed(std::uint64_t bits) noexcept {
  // (k + 1) / 2^53 with k in [0, 2^53)
  return static_cast<double>((bits >> 11) + 1) * 0x1.0p-53;
}

}  // namespace

double gaussian_draw(std::uint64_t seed, DisorderTarget target, std::uint64_t index) noexcept {
  const std::uint64_t key = mix(mix(seed) ^ static_cast<std::uint64_t>(target));
  const std::uint64_t stream = mix(key ^ mix(index));
  const double u1 = unit_open_closed(mix(stream ^ 0x1ULL));
  const double u2 = unit_open_closed(mix(stream ^ 0x2ULL));
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

ChainHamiltonian apply_disorder(const ChainHamiltonian& h, const DisorderSpec& spec) {
  if (!std::isfinite(spec.sigma) || spec.sigma < 0.0) {
    throw InvalidParameter("disorder sigma must be finite and non-negative");
  }
  std::vector<double> diag(h.diagonal().begin(), h.diagonal().end());
  std::vector<double> off(h.offdiagonal().begin(), h.offdiagonal().end());
  if (spec.sigma == 0.0) return ChainHamiltonian(std::move(diag), std::move(off));
  if (spec.diagonal) {
    for (std::size_t j = 0; j < diag.size(); ++j)
      diag[j] += spec.sigma * gaussian_draw(spec.seed, DisorderTarget::diagonal, j);
  }
  if (spec.offdiagonal) {
    for (std::size_t j = 0; j < off.size(); ++j)
      off[j] += spec.sigma * gaussian_draw(spec.seed, DisorderTarget::offdiagonal, j);
  }
  return ChainHamiltonian(std::move(diag), std::move(off));
}

}  // namespace topochain
