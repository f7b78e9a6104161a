#include "topochain/tridiagonal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "topochain/errors.hpp"

namespace topochain::linalg {

namespace {

constexpr int kMaxSweeps = 60;

// d: diagonal (overwritten by eigenvalues). e: subdiagonal shifted so that
// e[i] couples i and i+1, e[n-1] = 0. z: column-major eigenvectors or empty.
void ql_implicit(std::vector<double>& d, std::vector<double>& e, std::vector<double>* z) {
  const std::size_t n = d.size();
  const double eps = std::numeric_limits<double>::epsilon();
  double shift_total = 0.0;
  double tst1 = 0.0;
  for (std::size_t l = 0; l < n; ++l) {
    tst1 = std::max(tst1, std::abs(d[l]) + std::abs(e[l]));
    std::size_t m = l;
    while (m < n - 1 && std::abs(e[m]) > eps * tst1) ++m;
    if (m > l) {
      int sweeps = 0;
      do {
        if (++sweeps > kMaxSweeps) throw NumericError("tridiagonal QL failed to converge");
        double g = d[l];
        double p = (d[l + 1] - g) / (2.0 * e[l]);
        double r = std::hypot(p, 1.0);
        if (p < 0) r = -r;
        d[l] = e[l] / (p + r);
        d[l + 1] = e[l] * (p + r);
        const double dl1 = d[l + 1];
        double h = g - d[l];
        for (std::size_t i = l + 2; i < n; ++i) d[i] -= h;
        shift_total += h;

        p = d[m];
        double c = 1.0, c2 = 1.0, c3 = 1.0;
        const double el1 = e[l + 1];
        double s = 0.0, s2 = 0.0;
        for (std::size_t ii = m; ii-- > l;) {
          c3 = c2;
          c2 = c;
          s2 = s;
          g = c * e[ii];
          h = c * p;
          r = std::hypot(p, e[ii]);
          e[ii + 1] = s * r;
          s = e[ii] / r;
          c = p / r;
          p = c * d[ii] - s * g;
          d[ii + 1] = h + s * (c * g + s * d[ii]);
          if (z) {
            double* zi = z->data() + ii * n;
            double* zi1 = z->data() + (ii + 1) * n;
            for (std::size_t k = 0; k < n; ++k) {
              h = zi1[k];
              zi1[k] = s * zi[k] + c * h;
              zi[k] = c * zi[k] - s * h;
            }
          }
        }
        p = -s * s2 * c3 * el1 * e[l] / dl1;
        e[l] = s * p;
        d[l] = c * p;
      } while (std::abs(e[l]) > eps * tst1);
    }
    d[l] += shift_total;
    e[l] = 0.0;
  }
}

void check_input(std::span<const double> diag, std::span<const double> off) {
  if (diag.empty()) throw InvalidDimension("empty tridiagonal matrix");
  if (off.size() + 1 != diag.size()) throw InvalidDimension("off-diagonal length mismatch");
  for (double x : diag)
    if (!std::isfinite(x)) throw NumericError("non-finite diagonal entry");
  for (double x : off)
    if (!std::isfinite(x)) throw NumericError("non-finite off-diagonal entry");
}

}  // namespace

std::size_t pivot_component(std::span<const double> magnitudes) noexcept {
  double best = 0.0;
  for (double m : magnitudes) best = std::max(best, m);
  const double cut = best * (1.0 - 1e-10);
  for (std::size_t i = 0; i < magnitudes.size(); ++i)
    if (magnitudes[i] >= cut) return i;
  return 0;
}

TridiagonalEigen tridiagonal_eigen(std::span<const double> diag, std::span<const double> off) {
  check_input(diag, off);
  const std::size_t n = diag.size();
  std::vector<double> d(diag.begin(), diag.end());
  std::vector<double> e(n, 0.0);
  std::copy(off.begin(), off.end(), e.begin());
  std::vector<double> z(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) z[i * n + i] = 1.0;
  if (n > 1) ql_implicit(d, e, &z);

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return d[x] < d[y]; });

  TridiagonalEigen out;
  out.n = n;
  out.values.resize(n);
  out.vectors.resize(n * n);
  std::vector<double> mags(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double* src = z.data() + order[j] * n;
    double* dst = out.vectors.data() + j * n;
    out.values[j] = d[order[j]];
    for (std::size_t k = 0; k < n; ++k) mags[k] = std::abs(src[k]);
    const double sign = src[pivot_component(mags)] < 0 ? -1.0 : 1.0;
    for (std::size_t k = 0; k < n; ++k) dst[k] = sign * src[k];
  }
  return out;
}

std::vector<double> tridiagonal_eigenvalues(std::span<const double> diag,
                                            std::span<const double> off) {
  check_input(diag, off);
  const std::size_t n = diag.size();
  std::vector<double> d(diag.begin(), diag.end());
  std::vector<double> e(n, 0.0);
  std::copy(off.begin(), off.end(), e.begin());
  if (n > 1) ql_implicit(d, e, nullptr);
  std::sort(d.begin(), d.end());
  return d;
}

}  // namespace topochain::linalg
