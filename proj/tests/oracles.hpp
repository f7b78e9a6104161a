#pragma once
// Independent reference computations for tests. Eigen is only used here.

#include <Eigen/Dense>
#include <algorithm>
#include <complex>
#include <random>
#include <vector>

#include "topochain/chain.hpp"
#include "topochain/hermitian.hpp"

namespace oracle {

using cplx = std::complex<double>;

inline Eigen::MatrixXd dense(const topochain::ChainHamiltonian& h) {
  const auto n = static_cast<Eigen::Index>(h.size());
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      m(i, j) = h.entry(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
  return m;
}

inline std::vector<double> eigenvalues(const topochain::ChainHamiltonian& h) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dense(h), Eigen::EigenvaluesOnly);
  const auto& v = es.eigenvalues();
  return {v.data(), v.data() + v.size()};
}

inline Eigen::MatrixXcd dense(const topochain::linalg::HermitianMatrix& h) {
  const auto n = static_cast<Eigen::Index>(h.size());
  Eigen::MatrixXcd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      m(i, j) = h(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
  return m;
}

inline std::vector<double> eigenvalues(const topochain::linalg::HermitianMatrix& h) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(dense(h), Eigen::EigenvaluesOnly);
  const auto& v = es.eigenvalues();
  return {v.data(), v.data() + v.size()};
}

/// exp(-i H t) psi by dense diagonalization.
inline std::vector<cplx> propagate(const topochain::ChainHamiltonian& h, const std::vector<cplx>& psi,
                                   double t) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dense(h));
  const auto n = static_cast<Eigen::Index>(psi.size());
  Eigen::VectorXcd x(n);
  for (Eigen::Index i = 0; i < n; ++i) x(i) = psi[static_cast<std::size_t>(i)];
  const Eigen::MatrixXcd v = es.eigenvectors().cast<cplx>();
  Eigen::VectorXcd c = v.adjoint() * x;
  for (Eigen::Index k = 0; k < n; ++k) c(k) *= std::exp(cplx(0.0, -es.eigenvalues()(k) * t));
  const Eigen::VectorXcd y = v * c;
  return {y.data(), y.data() + y.size()};
}

inline double overlap_sq(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  cplx acc{};
  for (std::size_t i = 0; i < a.size(); ++i) acc += std::conj(a[i]) * b[i];
  return std::norm(acc);
}

inline double max_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double r = a.size() == b.size() ? 0.0 : 1e300;
  for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) r = std::max(r, std::abs(a[i] - b[i]));
  return r;
}

/// Random chain of n sites, entries uniform in [-1, 1] (diagonal zero if chiral).
inline topochain::ChainHamiltonian random_chain(std::mt19937_64& rng, std::size_t n, bool chiral) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> d(n), e(n - 1);
  for (auto& x : d) x = chiral ? 0.0 : u(rng);
  for (auto& x : e) x = u(rng);
  return {d, e};
}

}  // namespace oracle
