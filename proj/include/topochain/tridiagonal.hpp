#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace topochain::linalg {

/// Eigenpairs of a real symmetric tridiagonal matrix.
/// values ascending; vectors column-major (column j pairs with values[j]).
struct TridiagonalEigen {
  std::size_t n = 0;
  std::vector<double> values;
  std::vector<double> vectors;

  double at(std::size_t row, std::size_t col) const noexcept { return vectors[col * n + row]; }
  std::span<const double> column(std::size_t j) const noexcept {
    return {vectors.data() + j * n, n};
  }
};

/// Implicit-shift QL with Wilkinson-style shifts. Throws NumericError on
/// non-finite input or if an eigenvalue fails to converge in 60 sweeps.
/// Each eigenvector is flipped so its largest-magnitude component is positive
/// (ties go to the lowest index).
TridiagonalEigen tridiagonal_eigen(std::span<const double> diag, std::span<const double> off);

/// Eigenvalues only, ascending.
std::vector<double> tridiagonal_eigenvalues(std::span<const double> diag,
                                            std::span<const double> off);

/// Index of the component that fixes the sign/phase of a vector: the first
/// index whose magnitude is within a relative 1e-10 of the maximum.
std::size_t pivot_component(std::span<const double> magnitudes) noexcept;

}  // namespace topochain::linalg
