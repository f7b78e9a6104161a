#include "topochain/integrators.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "topochain/errors.hpp"

namespace topochain {

std::string_view to_string(IntegratorMethod m) noexcept {
  return m == IntegratorMethod::bdf ? "bdf" : "rk4";
}

IntegratorMethod integrator_method_from_string(std::string_view name) {
  if (name == "bdf") return IntegratorMethod::bdf;
  if (name == "rk4") return IntegratorMethod::rk4;
  throw SchemaError({"unknown integrator method '" + std::string(name) + "'"});
}

void IntegratorConfig::validate() const {
  if (!(rel_tol > 0.0) || !(abs_tol > 0.0))
    throw InvalidParameter("integrator tolerances must be positive");
  if (!(max_step > 0.0)) throw InvalidParameter("integrator max_step must be positive");
}

void solve_shifted_tridiagonal(const ChainHamiltonian& h, double c, cvec& b) {
  const std::size_t n = h.size();
  const cplx ic(0.0, c);
  cvec d(n), du(n > 1 ? n - 1 : 0), dl(n > 1 ? n - 1 : 0);
  for (std::size_t i = 0; i < n; ++i) d[i] = 1.0 + ic * h.diagonal()[i];
  for (std::size_t i = 0; i + 1 < n; ++i) du[i] = dl[i] = ic * h.offdiagonal()[i];
  auto cabs1 = [](cplx z) { return std::abs(z.real()) + std::abs(z.imag()); };

  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (dl[k] == cplx{}) {
      if (d[k] == cplx{}) throw NumericError("singular shifted tridiagonal system");
    } else if (cabs1(d[k]) >= cabs1(dl[k])) {
      const cplx mult = dl[k] / d[k];
      d[k + 1] -= mult * du[k];
      b[k + 1] -= mult * b[k];
      dl[k] = 0.0;
    } else {
      const cplx mult = d[k] / dl[k];
      d[k] = dl[k];
      const cplx temp = d[k + 1];
      d[k + 1] = du[k] - mult * temp;
      if (k + 2 < n) {
        dl[k] = du[k + 1];
        du[k + 1] = -mult * dl[k];
      }
      du[k] = temp;
      const cplx tb = b[k];
      b[k] = b[k + 1];
      b[k + 1] = tb - mult * b[k + 1];
    }
  }
  if (d[n - 1] == cplx{}) throw NumericError("singular shifted tridiagonal system");
  b[n - 1] /= d[n - 1];
  if (n > 1) b[n - 2] = (b[n - 2] - du[n - 2] * b[n - 1]) / d[n - 2];
  for (std::size_t k = n - 2; k-- > 0;) {
    b[k] = (b[k] - du[k] * b[k + 1] - dl[k] * b[k + 2]) / d[k];
  }
}

namespace {

constexpr double kMinFactor = 0.2;
constexpr double kMaxFactor = 10.0;

void apply_minus_i_h(const ChainHamiltonian& h, const cvec& y, cvec& out) {
  out.resize(y.size());
  h.multiply(y, out);
  for (cplx& z : out) z = cplx(z.imag(), -z.real());
}

// R(order, factor) from the step-change formula; (order+1)^2 row-major.
std::vector<double> compute_r(int order, double factor) {
  const int m = order + 1;
  std::vector<double> r(m * m, 0.0);
  for (int j = 0; j < m; ++j) r[j] = 1.0;
  for (int i = 1; i < m; ++i) {
    for (int j = 1; j < m; ++j) {
      r[i * m + j] = r[(i - 1) * m + j] * (i - 1 - factor * j) / i;
    }
  }
  return r;
}

}  // namespace

BdfIntegrator::BdfIntegrator(HamiltonianProvider provider, double t0, cvec y0,
                             const IntegratorConfig& cfg)
    : provider_(std::move(provider)), cfg_(cfg), n_(y0.size()), t_(t0), t_old_(t0) {
  cfg_.validate();
  if (n_ == 0) throw InvalidDimension("empty state vector");
  const double kappa[kMaxOrder + 1] = {0.0, -0.1850, -1.0 / 9.0, -0.0823, -0.0415, 0.0};
  gamma_[0] = 0.0;
  for (int k = 1; k <= kMaxOrder; ++k) gamma_[k] = gamma_[k - 1] + 1.0 / k;
  for (int k = 0; k <= kMaxOrder; ++k) {
    alpha_[k] = (1.0 - kappa[k]) * gamma_[k];
    error_const_[k] = kappa[k] * gamma_[k] + 1.0 / (k + 1);
  }
  error_const_[kMaxOrder + 1] = 1.0 / (kMaxOrder + 2);
  for (auto& row : d_) row.assign(n_, cplx{});
  d_[0] = std::move(y0);
}

cvec BdfIntegrator::rhs(double t, const cvec& y) const {
  cvec out;
  apply_minus_i_h(provider_(t), y, out);
  return out;
}

double BdfIntegrator::rms_scaled(const cvec& v, const std::vector<double>& scale) const {
  double s = 0.0;
  for (std::size_t i = 0; i < n_; ++i) s += std::norm(v[i] / scale[i]);
  return std::sqrt(s / static_cast<double>(n_));
}

void BdfIntegrator::change_d(int order, double factor) {
  const int m = order + 1;
  const auto r = compute_r(order, factor);
  const auto u = compute_r(order, 1.0);
  std::vector<double> ru(m * m, 0.0);
  for (int i = 0; i < m; ++i)
    for (int k = 0; k < m; ++k)
      for (int j = 0; j < m; ++j) ru[i * m + j] += r[i * m + k] * u[k * m + j];
  std::vector<cvec> fresh(m, cvec(n_));
  for (int j = 0; j < m; ++j) {
    for (int i = 0; i < m; ++i) {
      const double w = ru[i * m + j];
      if (w == 0.0) continue;
      for (std::size_t p = 0; p < n_; ++p) fresh[j][p] += w * d_[i][p];
    }
  }
  for (int j = 0; j < m; ++j) d_[j] = std::move(fresh[j]);
}

void BdfIntegrator::initial_step(double t_bound) {
  const cvec& y0 = d_[0];
  const cvec f0 = rhs(t_, y0);
  const double interval = std::abs(t_bound - t_);
  std::vector<double> scale(n_);
  for (std::size_t i = 0; i < n_; ++i) scale[i] = cfg_.abs_tol + std::abs(y0[i]) * cfg_.rel_tol;
  const double d0 = rms_scaled(y0, scale);
  const double d1 = rms_scaled(f0, scale);
  double h0 = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
  h0 = std::min(h0, interval);
  cvec y1(n_);
  for (std::size_t i = 0; i < n_; ++i) y1[i] = y0[i] + h0 * f0[i];
  const cvec f1 = rhs(t_ + h0, y1);
  cvec df(n_);
  for (std::size_t i = 0; i < n_; ++i) df[i] = f1[i] - f0[i];
  const double d2 = rms_scaled(df, scale) / h0;
  const double h1 = (d1 <= 1e-15 && d2 <= 1e-15) ? std::max(1e-6, h0 * 1e-3)
                                                 : std::pow(0.01 / std::max(d1, d2), 0.5);
  h_abs_ = std::min({100.0 * h0, h1, interval, cfg_.max_step});
  d_[1] = f0;
  for (cplx& z : d_[1]) z *= h_abs_;
  h_initialised_ = true;
}

void BdfIntegrator::rescale(double factor) noexcept {
  for (auto& row : d_)
    for (cplx& z : row) z *= factor;
}

void BdfIntegrator::advance_to(double t_bound) {
  if (!(t_bound >= t_)) throw InvalidParameter("BDF integrator only steps forward");
  while (t_ < t_bound) step(t_bound);
}

void BdfIntegrator::step(double t_bound) {
  if (!(t_bound > t_)) throw InvalidParameter("BDF integrator only steps forward");
  if (!h_initialised_) initial_step(t_bound);
  t_old_ = t_;
  {
    const double min_step = 10.0 * std::abs(std::nextafter(t_, INFINITY) - t_);
    double h_abs = h_abs_;
    if (h_abs > cfg_.max_step) {
      h_abs = cfg_.max_step;
      change_d(order_, cfg_.max_step / h_abs_);
      n_equal_steps_ = 0;
    } else if (h_abs < min_step) {
      h_abs = min_step;
      change_d(order_, min_step / h_abs_);
      n_equal_steps_ = 0;
    }

    const int order = order_;
    cvec y_new(n_), dvec(n_), y_predict(n_), psi(n_);
    std::vector<double> scale(n_);
    double t_new = t_;
    double error_norm = 0.0;
    bool accepted = false;
    while (!accepted) {
      if (h_abs < min_step) {
        throw IntegrationError("BDF step size underflow at t=" + std::to_string(t_) +
                               " (h=" + std::to_string(h_abs) + ")");
      }
      t_new = t_ + h_abs;
      if (t_new > t_bound) {
        t_new = t_bound;
        change_d(order, std::abs(t_new - t_) / h_abs);
        n_equal_steps_ = 0;
      }
      const double h = t_new - t_;
      h_abs = std::abs(h);

      std::fill(y_predict.begin(), y_predict.end(), cplx{});
      std::fill(psi.begin(), psi.end(), cplx{});
      for (int k = 0; k <= order; ++k)
        for (std::size_t i = 0; i < n_; ++i) y_predict[i] += d_[k][i];
      for (int k = 1; k <= order; ++k)
        for (std::size_t i = 0; i < n_; ++i) psi[i] += d_[k][i] * gamma_[k];
      for (cplx& z : psi) z /= alpha_[order];

      const double c = h / alpha_[order];
      const ChainHamiltonian hn = provider_(t_new);
      cvec f;
      apply_minus_i_h(hn, y_predict, f);
      for (std::size_t i = 0; i < n_; ++i) dvec[i] = c * f[i] - psi[i];
      solve_shifted_tridiagonal(hn, c, dvec);
      for (std::size_t i = 0; i < n_; ++i) y_new[i] = y_predict[i] + dvec[i];

      const double safety = 0.9;
      for (std::size_t i = 0; i < n_; ++i)
        scale[i] = cfg_.abs_tol + cfg_.rel_tol * std::abs(y_new[i]);
      cvec err(n_);
      for (std::size_t i = 0; i < n_; ++i) err[i] = error_const_[order] * dvec[i];
      error_norm = rms_scaled(err, scale);
      if (error_norm > 1.0) {
        const double factor =
            std::max(kMinFactor, safety * std::pow(error_norm, -1.0 / (order + 1)));
        h_abs *= factor;
        change_d(order, factor);
        n_equal_steps_ = 0;
        ++n_rejected_;
      } else {
        accepted = true;
      }
    }

    ++n_equal_steps_;
    ++n_steps_;
    t_ = t_new;
    h_abs_ = h_abs;

    d_[order + 2] = dvec;
    for (std::size_t i = 0; i < n_; ++i) d_[order + 2][i] -= d_[order + 1][i];
    d_[order + 1] = dvec;
    for (int k = order; k >= 0; --k)
      for (std::size_t i = 0; i < n_; ++i) d_[k][i] += d_[k + 1][i];
    // d_[0] now equals y_new up to rounding; keep the corrector value.
    d_[0] = y_new;

    if (n_equal_steps_ < order + 1) return;

    const double safety = 0.9;
    double norms[3];
    if (order > 1) {
      cvec e(n_);
      for (std::size_t i = 0; i < n_; ++i) e[i] = error_const_[order - 1] * d_[order][i];
      norms[0] = rms_scaled(e, scale);
    } else {
      norms[0] = INFINITY;
    }
    norms[1] = error_norm;
    if (order < kMaxOrder) {
      cvec e(n_);
      for (std::size_t i = 0; i < n_; ++i) e[i] = error_const_[order + 1] * d_[order + 2][i];
      norms[2] = rms_scaled(e, scale);
    } else {
      norms[2] = INFINITY;
    }
    double best = -1.0;
    int best_k = 1;
    for (int k = 0; k < 3; ++k) {
      const double f = std::pow(norms[k], -1.0 / (order + k));
      if (f > best) {
        best = f;
        best_k = k;
      }
    }
    order_ = order + best_k - 1;
    const double factor = std::min(kMaxFactor, safety * best);
    h_abs_ *= factor;
    change_d(order_, factor);
    n_equal_steps_ = 0;
  }
}

cvec BdfIntegrator::interpolate(double t) const {
  cvec y = d_[0];
  const double h = h_abs_;
  double p = 1.0;
  for (int k = 0; k < order_; ++k) {
    p *= (t - (t_ - h * k)) / (h * (k + 1));
    for (std::size_t i = 0; i < n_; ++i) y[i] += d_[k + 1][i] * p;
  }
  return y;
}

Rk4Integrator::Rk4Integrator(HamiltonianProvider provider, double t0, cvec y0,
                             const IntegratorConfig& cfg)
    : provider_(std::move(provider)), cfg_(cfg), t_(t0), y_(std::move(y0)) {
  cfg_.validate();
  if (y_.empty()) throw InvalidDimension("empty state vector");
}

void Rk4Integrator::rescale(double factor) noexcept {
  for (cplx& z : y_) z *= factor;
}

void Rk4Integrator::advance_to(double t_bound) {
  if (!(t_bound >= t_)) throw InvalidParameter("RK4 integrator only steps forward");
  const double span = t_bound - t_;
  if (span == 0.0) return;
  const double hnorm = std::max({provider_(t_).norm_inf(), provider_(t_ + 0.5 * span).norm_inf(),
                                 provider_(t_bound).norm_inf()});
  double h_target = cfg_.max_step;
  if (hnorm > 0.0) h_target = std::min(h_target, 2.0 * std::pow(cfg_.rel_tol, 0.25) / hnorm);
  const auto substeps =
      static_cast<std::size_t>(std::max(1.0, std::ceil(span / std::min(h_target, span))));
  const double h = span / static_cast<double>(substeps);
  const std::size_t n = y_.size();
  cvec k1, k2, k3, k4, tmp(n);
  const double t_start = t_;
  for (std::size_t s = 0; s < substeps; ++s) {
    const double t = t_start + h * static_cast<double>(s);
    const ChainHamiltonian h0 = provider_(t);
    const ChainHamiltonian hm = provider_(t + 0.5 * h);
    const ChainHamiltonian h1 = provider_(t + h);
    apply_minus_i_h(h0, y_, k1);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = y_[i] + 0.5 * h * k1[i];
    apply_minus_i_h(hm, tmp, k2);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = y_[i] + 0.5 * h * k2[i];
    apply_minus_i_h(hm, tmp, k3);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = y_[i] + h * k3[i];
    apply_minus_i_h(h1, tmp, k4);
    for (std::size_t i = 0; i < n; ++i)
      y_[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    ++n_steps_;
  }
  t_ = t_bound;
}

}  // namespace topochain
