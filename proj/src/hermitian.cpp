#include "topochain/hermitian.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "topochain/errors.hpp"
#include "topochain/tridiagonal.hpp"

namespace topochain::linalg {

HermitianMatrix::HermitianMatrix(std::size_t n) : n_(n), data_(n * n) {
  if (n == 0) throw InvalidDimension("Hermitian matrix needs positive dimension");
}

void HermitianMatrix::set(std::size_t i, std::size_t j, cplx v) noexcept {
  if (i == j) {
    data_[i * n_ + i] = v.real();
    return;
  }
  data_[i * n_ + j] = v;
  data_[j * n_ + i] = std::conj(v);
}

void HermitianMatrix::add(std::size_t i, std::size_t j, cplx v) noexcept {
  set(i, j, (*this)(i, j) + v);
}

std::size_t HermitianMatrix::bandwidth() const noexcept {
  std::size_t b = 0;
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = i + 1; j < n_; ++j)
      if (data_[i * n_ + j] != cplx{} || data_[j * n_ + i] != cplx{}) b = std::max(b, j - i);
  return b;
}

double HermitianMatrix::hermiticity_residual() const noexcept {
  double r = 0.0;
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = i; j < n_; ++j)
      r = std::max(r, std::abs(data_[i * n_ + j] - std::conj(data_[j * n_ + i])));
  return r;
}

double HermitianMatrix::norm_inf() const noexcept {
  double best = 0.0;
  for (std::size_t i = 0; i < n_; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < n_; ++j) row += std::abs(data_[i * n_ + j]);
    best = std::max(best, row);
  }
  return best;
}

double HermitianMatrix::max_abs_diff(const HermitianMatrix& other) const noexcept {
  if (other.n_ != n_) return std::numeric_limits<double>::infinity();
  double r = 0.0;
  for (std::size_t k = 0; k < data_.size(); ++k) r = std::max(r, std::abs(data_[k] - other.data_[k]));
  return r;
}

void HermitianMatrix::multiply(std::span<const cplx> x, std::span<cplx> y) const noexcept {
  for (std::size_t i = 0; i < n_; ++i) {
    cplx acc{};
    const cplx* row = data_.data() + i * n_;
    for (std::size_t j = 0; j < n_; ++j) acc += row[j] * x[j];
    y[i] = acc;
  }
}

cplx HermitianMatrix::expectation(std::span<const cplx> x, std::span<const cplx> y) const {
  std::vector<cplx> hy(n_);
  multiply(y, hy);
  cplx acc{};
  for (std::size_t i = 0; i < n_; ++i) acc += std::conj(x[i]) * hy[i];
  return acc;
}

namespace {

class DenseWork {
 public:
  DenseWork(const HermitianMatrix& h) : n(h.size()), a(h.data().begin(), h.data().end()) {}
  cplx& at(std::size_t i, std::size_t j) { return a[i * n + j]; }

  // Zero entry (p+1, col) with a unitary rotation of rows/columns p, p+1.
  void rotate(std::size_t p, std::size_t col, std::size_t band) {
    const std::size_t q = p + 1;
    const cplx x = at(p, col);
    const cplx y = at(q, col);
    if (y == cplx{}) return;
    const double ax = std::abs(x);
    const double r = std::hypot(ax, std::abs(y));
    double c;
    cplx s;
    if (ax == 0.0) {
      c = 0.0;
      s = std::conj(y) / std::abs(y);
    } else {
      c = ax / r;
      s = (x / ax) * std::conj(y) / r;
    }
    const std::size_t lo = p > band + 1 ? p - band - 1 : 0;
    const std::size_t hi = std::min(n - 1, q + band + 1);
    const cplx sc = std::conj(s);
    cplx* rp = a.data() + p * n;
    cplx* rq = a.data() + q * n;
    for (std::size_t j = lo; j <= hi; ++j) {
      const cplx ap = rp[j], aq = rq[j];
      rp[j] = c * ap + s * aq;
      rq[j] = -sc * ap + c * aq;
    }
    // Column update: the 2x2 block by hand, the rest mirrors the new rows.
    for (cplx* row : {rp, rq}) {
      const cplx ap = row[p], aq = row[q];
      row[p] = c * ap + sc * aq;
      row[q] = -s * ap + c * aq;
    }
    for (std::size_t i = lo; i <= hi; ++i) {
      if (i == p || i == q) continue;
      cplx* row = a.data() + i * n;
      row[p] = std::conj(rp[i]);
      row[q] = std::conj(rq[i]);
    }
    at(q, col) = 0.0;
    at(col, q) = 0.0;
  }

  std::size_t n;
  std::vector<cplx> a;
};

// Reduce a Hermitian band matrix to tridiagonal form; returns (diag, |offdiag|).
void band_to_tridiagonal(const HermitianMatrix& h, std::size_t band, std::vector<double>& d,
                         std::vector<double>& e) {
  DenseWork w(h);
  const std::size_t n = w.n;
  if (band > 1) {
    for (std::size_t j = 0; j + 2 < n; ++j) {
      const std::size_t kmax = std::min(band, n - 1 - j);
      for (std::size_t k = kmax; k >= 2; --k) {
        w.rotate(j + k - 1, j, band);
        std::size_t r = j + k + band;
        std::size_t c = j + k - 1;
        while (r < n) {
          w.rotate(r - 1, c, band);
          c = r - 1;
          r += band;
        }
      }
    }
  }
  d.resize(n);
  e.resize(n > 0 ? n - 1 : 0);
  for (std::size_t i = 0; i < n; ++i) d[i] = w.at(i, i).real();
  for (std::size_t i = 0; i + 1 < n; ++i) e[i] = std::abs(w.at(i + 1, i));
}

// LU factorization with partial pivoting of the banded matrix H - shift I.
class BandLU {
 public:
  BandLU(const HermitianMatrix& h, std::size_t band, double shift, double tiny)
      : n_(h.size()), kl_(band), width_(3 * band + 1), ab_(n_ * width_), piv_(n_) {
    for (std::size_t i = 0; i < n_; ++i) {
      const std::size_t j0 = i > kl_ ? i - kl_ : 0;
      const std::size_t j1 = std::min(n_ - 1, i + kl_);
      for (std::size_t j = j0; j <= j1; ++j) at(i, j) = h(i, j);
      at(i, i) -= shift;
    }
    const std::size_t reach = 2 * kl_;
    for (std::size_t k = 0; k < n_; ++k) {
      const std::size_t last = std::min(n_ - 1, k + kl_);
      std::size_t p = k;
      double best = std::abs(at(k, k));
      for (std::size_t i = k + 1; i <= last; ++i) {
        const double m = std::abs(at(i, k));
        if (m > best) {
          best = m;
          p = i;
        }
      }
      piv_[k] = p;
      const std::size_t jend = std::min(n_ - 1, k + reach);
      if (p != k) {
        for (std::size_t j = k; j <= jend; ++j) std::swap(at(k, j), at(p, j));
      }
      if (at(k, k) == cplx{}) at(k, k) = tiny;
      const cplx pivot = at(k, k);
      for (std::size_t i = k + 1; i <= last; ++i) {
        const cplx m = at(i, k) / pivot;
        at(i, k) = m;
        if (m == cplx{}) continue;
        for (std::size_t j = k + 1; j <= jend; ++j) at(i, j) -= m * at(k, j);
      }
    }
  }

  void solve(std::vector<cplx>& b) const {
    for (std::size_t k = 0; k < n_; ++k) {
      if (piv_[k] != k) std::swap(b[k], b[piv_[k]]);
      const std::size_t last = std::min(n_ - 1, k + kl_);
      for (std::size_t i = k + 1; i <= last; ++i) b[i] -= at(i, k) * b[k];
    }
    const std::size_t reach = 2 * kl_;
    for (std::size_t ii = n_; ii-- > 0;) {
      cplx acc = b[ii];
      const std::size_t jend = std::min(n_ - 1, ii + reach);
      for (std::size_t j = ii + 1; j <= jend; ++j) acc -= at(ii, j) * b[j];
      b[ii] = acc / at(ii, ii);
    }
  }

 private:
  cplx& at(std::size_t i, std::size_t j) { return ab_[i * width_ + (j + kl_ - i)]; }
  const cplx& at(std::size_t i, std::size_t j) const { return ab_[i * width_ + (j + kl_ - i)]; }

  std::size_t n_, kl_, width_;
  std::vector<cplx> ab_;
  std::vector<std::size_t> piv_;
};

double normalize(std::vector<cplx>& v) {
  double s = 0.0;
  for (const cplx& x : v) s += std::norm(x);
  s = std::sqrt(s);
  if (s > 0.0)
    for (cplx& x : v) x /= s;
  return s;
}

void project_out(std::vector<cplx>& v, std::span<const cplx> u) {
  cplx dot{};
  for (std::size_t i = 0; i < v.size(); ++i) dot += std::conj(u[i]) * v[i];
  for (std::size_t i = 0; i < v.size(); ++i) v[i] -= dot * u[i];
}

void fix_phase(std::span<cplx> v) {
  std::vector<double> mags(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) mags[i] = std::abs(v[i]);
  const std::size_t k = pivot_component(mags);
  if (mags[k] == 0.0) return;
  const cplx phase = std::conj(v[k]) / mags[k];
  for (cplx& x : v) x *= phase;
  v[k] = mags[k];
}

}  // namespace

HermitianEigen hermitian_eigen(const HermitianMatrix& h, std::size_t n_vectors) {
  const std::size_t n = h.size();
  if (n_vectors > n) throw InvalidDimension("more eigenvectors requested than the dimension");
  for (const cplx& x : h.data())
    if (!std::isfinite(x.real()) || !std::isfinite(x.imag()))
      throw NumericError("non-finite Hermitian matrix entry");

  const std::size_t band = std::max<std::size_t>(h.bandwidth(), 1);
  std::vector<double> d, e;
  band_to_tridiagonal(h, band, d, e);

  HermitianEigen out;
  out.n = n;
  out.values = tridiagonal_eigenvalues(d, e);
  out.n_vectors = n_vectors;
  out.vectors.assign(n * n_vectors, cplx{});
  if (n_vectors == 0) return out;

  const double scale = std::max(h.norm_inf(), std::numeric_limits<double>::min());
  const double tiny = std::numeric_limits<double>::epsilon() * scale;
  const double cluster_gap = 1e-3 * scale;
  std::size_t cluster_start = 0;
  std::vector<cplx> v(n);
  for (std::size_t j = 0; j < n_vectors; ++j) {
    if (j > 0 && out.values[j] - out.values[j - 1] > cluster_gap) cluster_start = j;
    const BandLU lu(h, band, out.values[j], tiny);
    for (std::size_t k = 0; k < n; ++k) {
      const double t = static_cast<double>(k + 1);
      const double s = static_cast<double>(j + 1);
      v[k] = cplx(1.0 + 0.5 * std::sin(0.7 * t * s), 0.3 * std::cos(1.3 * t + s));
    }
    normalize(v);
    for (int iter = 0; iter < 3; ++iter) {
      lu.solve(v);
      for (std::size_t m = cluster_start; m < j; ++m) project_out(v, out.column(m));
      if (normalize(v) == 0.0) throw NumericError("inverse iteration collapsed");
    }
    for (std::size_t m = cluster_start; m < j; ++m) project_out(v, out.column(m));
    normalize(v);
    std::span<cplx> dst(out.vectors.data() + j * n, n);
    std::copy(v.begin(), v.end(), dst.begin());
    fix_phase(dst);
  }
  return out;
}

}  // namespace topochain::linalg
