#pragma once

#include <cstdint>

#include "topochain/chain.hpp"

namespace topochain {

/// Static Gaussian noise added to chain entries.
struct DisorderSpec {
  double sigma = 0.0;
  std::uint64_t seed = 0;
  bool diagonal = false;
  bool offdiagonal = true;
};

/// Which part of the matrix a draw belongs to; part of the hash key.
enum class DisorderTarget : std::uint64_t { diagonal = 1, offdiagonal = 2 };

/// Standard normal draw keyed by (seed, target, index). Counter-based, so the
/// value does not depend on how many other draws were taken or in what order.
/// Box-Muller, cosine branch, from two 53-bit uniforms with u1 in (0, 1].
double gaussian_draw(std::uint64_t seed, DisorderTarget target, std::uint64_t index) noexcept;

/// Returns H with sigma * gaussian_draw(...) added to every targeted entry.
/// Throws InvalidParameter for negative or non-finite sigma.
ChainHamiltonian apply_disorder(const ChainHamiltonian& h, const DisorderSpec& spec);

}  // namespace topochain
