#pragma once

#include <complex>
#include <string_view>

namespace topochain {

/// Bessel function of the first kind J_n(x) for |x| < 50 and any integer n.
/// Downward recurrence normalized by J_0^2 + 2 sum J_k^2 = 1 (sign from
/// J_0 + 2 sum J_2k = 1) for |x| > 0.1, power series below.
/// Throws InvalidParameter outside the supported range.
double bessel_j(int n, double x);

enum class CouplingScheme { identical_frequencies, frequency_matched };
/// Which factor carries J_1 in the matched scheme: P = J_0(a1) J_1(a2), Q = J_1(a1) J_0(a2).
enum class BondParity { p, q };

std::string_view to_string(CouplingScheme s) noexcept;
CouplingScheme coupling_scheme_from_string(std::string_view name);

struct EffectiveCoupling {
  std::complex<double> value;
  CouplingScheme scheme = CouplingScheme::identical_frequencies;
};

/// bare * sum_{n=-n_max}^{n_max} (-1)^n J_n(alpha_1) J_n(alpha_2). Real.
EffectiveCoupling effective_coupling_identical(double bare, double alpha_1, double alpha_2,
                                               int n_max = 40);

/// i * bare * J_0(alpha_1) J_1(alpha_2) for parity p, i * bare * J_1(alpha_1) J_0(alpha_2) for q.
EffectiveCoupling effective_coupling_matched(double bare, double alpha_1, double alpha_2,
                                             BondParity parity = BondParity::p);

}  // namespace topochain
