#include "topochain/couplings.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "topochain/errors.hpp"

namespace topochain {

namespace {

constexpr double kMaxArgument = 50.0;

double series(int n, double x) {
  const double half = 0.5 * x;
  double term = 1.0;
  for (int k = 1; k <= n; ++k) term *= half / k;
  const double q = -half * half;
  double sum = term;
  for (int k = 1; k < 60; ++k) {
    term *= q / (static_cast<double>(k) * (n + k));
    sum += term;
    if (std::abs(term) <= 1e-17 * std::abs(sum)) break;
  }
  return sum;
}

// J_n(x) for n >= 0, 0.1 < x < 50.
double miller(int n, double x) {
  const double top = std::max<double>(n, x);
  int m = static_cast<int>(top + 30.0 + 4.0 * std::sqrt(top));
  m += m % 2;
  double next = 0.0;  // J_{k+1}
  double cur = 1.0;  // J_k
  double parseval = 0.0;
  double even_sum = 0.0;
  double wanted = 0.0;
  for (int k = m; k >= 1; --k) {
    const double prev = 2.0 * k / x * cur - next;  // J_{k-1}
    if (k == n) wanted = cur;
    parseval += 2.0 * cur * cur;
    if (k % 2 == 0) even_sum += 2.0 * cur;
    next = cur;
    cur = prev;
    if (std::abs(cur) > 1e100) {
      const double s = 1e-100;
      cur *= s;
      next *= s;
      wanted *= s;
      parseval *= s * s;
      even_sum *= s;
    }
  }
  if (n == 0) wanted = cur;
  parseval += cur * cur;
  even_sum += cur;
  const double norm = std::sqrt(parseval);
  return (even_sum < 0.0 ? -1.0 : 1.0) * wanted / norm;
}

}  // namespace

double bessel_j(int n, double x) {
  if (!std::isfinite(x) || std::abs(x) >= kMaxArgument) {
    throw InvalidParameter("bessel_j supports |x| < 50 (got " + std::to_string(x) + ")");
  }
  double sign = 1.0;
  if (n < 0) {
    n = -n;
    if (n % 2) sign = -sign;
  }
  if (x < 0.0) {
    x = -x;
    if (n % 2) sign = -sign;
  }
  if (x == 0.0) return n == 0 ? sign : 0.0;
  return sign * (x <= 0.1 ? series(n, x) : miller(n, x));
}

std::string_view to_string(CouplingScheme s) noexcept {
  return s == CouplingScheme::identical_frequencies ? "identical" : "matched";
}

CouplingScheme coupling_scheme_from_string(std::string_view name) {
  if (name == "identical") return CouplingScheme::identical_frequencies;
  if (name == "matched") return CouplingScheme::frequency_matched;
  throw SchemaError({"unknown coupling scheme '" + std::string(name) + "'"});
}

EffectiveCoupling effective_coupling_identical(double bare, double alpha_1, double alpha_2,
                                               int n_max) {
  if (n_max < 0) throw InvalidParameter("n_max must be non-negative");
  double sum = bessel_j(0, alpha_1) * bessel_j(0, alpha_2);
  for (int n = 1; n <= n_max; ++n) {
    const double term = bessel_j(n, alpha_1) * bessel_j(n, alpha_2);
    sum += (n % 2 ? -2.0 : 2.0) * term;
  }
  return {{bare * sum, 0.0}, CouplingScheme::identical_frequencies};
}

EffectiveCoupling effective_coupling_matched(double bare, double alpha_1, double alpha_2,
                                             BondParity parity) {
  const double mag = parity == BondParity::p ? bessel_j(0, alpha_1) * bessel_j(1, alpha_2)
                                             : bessel_j(1, alpha_1) * bessel_j(0, alpha_2);
  return {{0.0, bare * mag}, CouplingScheme::frequency_matched};
}

}  // namespace topochain
