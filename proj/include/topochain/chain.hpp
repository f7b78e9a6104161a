#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace topochain {

/// Lattice family a chain Hamiltonian belongs to.
enum class ModelKind { ssh, rice_mele, trimer, aah };

std::string_view to_string(ModelKind kind) noexcept;
ModelKind model_kind_from_string(std::string_view name);

/// Sites per unit cell (2 for SSH/Rice-Mele, 3 for the trimer, 1 for AAH).
std::size_t cell_size(ModelKind kind) noexcept;

/// Real symmetric tridiagonal Hamiltonian in the single-excitation basis
/// {|e_1>, ..., |e_n>}. Energies are in units of the intercell coupling b.
///
/// Only the diagonal and the first off-diagonal are stored, so the matrix is
/// symmetric and nearest-neighbour by construction. Values are immutable after
/// construction and safe to share between threads.
class ChainHamiltonian {
 public:
  /// Throws InvalidDimension unless offdiagonal.size() + 1 == diagonal.size()
  /// (and diagonal is non-empty), NumericError on non-finite entries.
  ChainHamiltonian(std::vector<double> diagonal, std::vector<double> offdiagonal);

  std::size_t size() const noexcept { return diagonal_.size(); }
  std::span<const double> diagonal() const noexcept { return diagonal_; }
  std::span<const double> offdiagonal() const noexcept { return offdiagonal_; }

  /// Dense matrix entry (0-based). Zero beyond the first off-diagonal.
  double entry(std::size_t i, std::size_t j) const noexcept;

  /// Row-major dense copy, mostly for oracles and export.
  std::vector<double> dense() const;

  /// y = H x.
  void multiply(std::span<const std::complex<double>> x,
                std::span<std::complex<double>> y) const noexcept;

  /// Infinity norm (max absolute row sum).
  double norm_inf() const noexcept;

  friend bool operator==(const ChainHamiltonian&, const ChainHamiltonian&) = default;

 private:
  std::vector<double> diagonal_;
  std::vector<double> offdiagonal_;
};

/// SSH chain of 2L sites: on-site omega, bonds a, b, a, ..., a.
ChainHamiltonian build_ssh(std::size_t cells, double a, double b, double omega = 0.0);

/// Rice-Mele chain: SSH bonds with staggered potential +u (A, odd sites) and -u (B).
ChainHamiltonian build_rice_mele(std::size_t cells, double a, double b, double u);

/// Trimer Rice-Mele chain of 3L sites: potentials (u, v, w) and bonds (a, b, c)
/// repeated per cell; the last intercell bond c is absent.
ChainHamiltonian build_trimer(std::size_t cells, double a, double b, double c, double u,
                              double v, double w);

/// Aubry-Andre-Harper chain: diagonal[j] = omega cos(2 pi j alpha + phase) with
/// 1-based site j, uniform hopping.
ChainHamiltonian build_aah(std::size_t n_sites, double omega, double alpha, double phase,
                           double hop);

}  // namespace topochain
