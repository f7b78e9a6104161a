#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace topochain::linalg {

using cplx = std::complex<double>;

/// Dense complex matrix, row-major, meant to hold a Hermitian operator.
/// set() writes an entry and its mirrored conjugate together.
class HermitianMatrix {
 public:
  explicit HermitianMatrix(std::size_t n);

  std::size_t size() const noexcept { return n_; }
  cplx operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * n_ + j]; }
  /// Raw access; callers that bypass set() are responsible for Hermiticity.
  cplx& raw(std::size_t i, std::size_t j) noexcept { return data_[i * n_ + j]; }

  /// H[i][j] = v and H[j][i] = conj(v); v must be real when i == j.
  void set(std::size_t i, std::size_t j, cplx v) noexcept;
  void add(std::size_t i, std::size_t j, cplx v) noexcept;

  /// Largest |i - j| over non-zero entries.
  std::size_t bandwidth() const noexcept;
  /// max |H - H^dagger|.
  double hermiticity_residual() const noexcept;
  /// Max absolute row sum.
  double norm_inf() const noexcept;
  double max_abs_diff(const HermitianMatrix& other) const noexcept;

  void multiply(std::span<const cplx> x, std::span<cplx> y) const noexcept;
  /// <x|H|y>.
  cplx expectation(std::span<const cplx> x, std::span<const cplx> y) const;

  std::span<const cplx> data() const noexcept { return data_; }

 private:
  std::size_t n_;
  std::vector<cplx> data_;
};

struct HermitianEigen {
  std::size_t n = 0;
  std::vector<double> values;   // all eigenvalues, ascending
  std::size_t n_vectors = 0;
  std::vector<cplx> vectors;    // column-major n x n_vectors, lowest levels

  std::span<const cplx> column(std::size_t j) const noexcept {
    return {vectors.data() + j * n, n};
  }
};

/// All eigenvalues and the n_vectors lowest eigenvectors.
///
/// Band-preserving Givens reduction to a Hermitian tridiagonal, QL for the
/// eigenvalues, then inverse iteration on the original banded matrix for the
/// requested vectors (re-orthogonalized within near-degenerate clusters). Each
/// vector is rephased so its largest component is real and positive.
HermitianEigen hermitian_eigen(const HermitianMatrix& h, std::size_t n_vectors);

}  // namespace topochain::linalg
