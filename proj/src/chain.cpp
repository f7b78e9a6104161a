#include "topochain/chain.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "topochain/errors.hpp"

namespace topochain {

std::string_view to_string(ModelKind kind) noexcept {
  switch (kind) {
    case ModelKind::ssh: return "ssh";
    case ModelKind::rice_mele: return "rice_mele";
    case ModelKind::trimer: return "trimer";
    case ModelKind::aah: return "aah";
  }
  return "unknown";
}

ModelKind model_kind_from_string(std::string_view name) {
  if (name == "ssh") return ModelKind::ssh;
  if (name == "rice_mele") return ModelKind::rice_mele;
  if (name == "trimer") return ModelKind::trimer;
  if (name == "aah") return ModelKind::aah;
  throw SchemaError({"unknown model kind '" + std::string(name) + "'"});
}

std::size_t cell_size(ModelKind kind) noexcept {
  switch (kind) {
    case ModelKind::ssh:
    case ModelKind::rice_mele: return 2;
    case ModelKind::trimer: return 3;
    case ModelKind::aah: return 1;
  }
  return 1;
}

ChainHamiltonian::ChainHamiltonian(std::vector<double> diagonal, std::vector<double> offdiagonal)
    : diagonal_(std::move(diagonal)), offdiagonal_(std::move(offdiagonal)) {
  if (diagonal_.empty()) throw InvalidDimension("chain Hamiltonian needs at least one site");
  if (offdiagonal_.size() + 1 != diagonal_.size()) {
    throw InvalidDimension("off-diagonal length " + std::to_string(offdiagonal_.size()) +
                           " does not match " + std::to_string(diagonal_.size()) + " sites");
  }
  auto finite = [](double x) { return std::isfinite(x); };
  if (!std::all_of(diagonal_.begin(), diagonal_.end(), finite) ||
      !std::all_of(offdiagonal_.begin(), offdiagonal_.end(), finite)) {
    throw NumericError("chain Hamiltonian has non-finite entries");
  }
}

double ChainHamiltonian::entry(std::size_t i, std::size_t j) const noexcept {
  if (i == j) return diagonal_[i];
  if (i + 1 == j) return offdiagonal_[i];
  if (j + 1 == i) return offdiagonal_[j];
  return 0.0;
}

std::vector<double> ChainHamiltonian::dense() const {
  const std::size_t n = size();
  std::vector<double> m(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    m[i * n + i] = diagonal_[i];
    if (i + 1 < n) {
      m[i * n + i + 1] = offdiagonal_[i];
      m[(i + 1) * n + i] = offdiagonal_[i];
    }
  }
  return m;
}

void ChainHamiltonian::multiply(std::span<const std::complex<double>> x,
                                std::span<std::complex<double>> y) const noexcept {
  const std::size_t n = size();
  for (std::size_t i = 0; i < n; ++i) {
    std::complex<double> acc = diagonal_[i] * x[i];
    if (i > 0) acc += offdiagonal_[i - 1] * x[i - 1];
    if (i + 1 < n) acc += offdiagonal_[i] * x[i + 1];
    y[i] = acc;
  }
}

double ChainHamiltonian::norm_inf() const noexcept {
  double best = 0.0;
  const std::size_t n = size();
  for (std::size_t i = 0; i < n; ++i) {
    double row = std::abs(diagonal_[i]);
    if (i > 0) row += std::abs(offdiagonal_[i - 1]);
    if (i + 1 < n) row += std::abs(offdiagonal_[i]);
    best = std::max(best, row);
  }
  return best;
}

namespace {

void require_cells(std::size_t cells) {
  if (cells == 0) throw InvalidDimension("cell count L must be at least 1");
}

}  // namespace

ChainHamiltonian build_ssh(std::size_t cells, double a, double b, double omega) {
  require_cells(cells);
  const std::size_t n = 2 * cells;
  std::vector<double> diag(n, omega);
  std::vector<double> off(n - 1);
  for (std::size_t j = 0; j + 1 < n; ++j) off[j] = (j % 2 == 0) ? a : b;
  return ChainHamiltonian(std::move(diag), std::move(off));
}

ChainHamiltonian build_rice_mele(std::size_t cells, double a, double b, double u) {
  require_cells(cells);
  const std::size_t n = 2 * cells;
  std::vector<double> diag(n);
  for (std::size_t j = 0; j < n; ++j) diag[j] = (j % 2 == 0) ? u : -u;
  std::vector<double> off(n - 1);
  for (std::size_t j = 0; j + 1 < n; ++j) off[j] = (j % 2 == 0) ? a : b;
  return ChainHamiltonian(std::move(diag), std::move(off));
}

ChainHamiltonian build_trimer(std::size_t cells, double a, double b, double c, double u, double v,
                              double w) {
  require_cells(cells);
  const std::size_t n = 3 * cells;
  const double pot[3] = {u, v, w};
  const double bond[3] = {a, b, c};
  std::vector<double> diag(n);
  for (std::size_t j = 0; j < n; ++j) diag[j] = pot[j % 3];
  std::vector<double> off(n - 1);
  for (std::size_t j = 0; j + 1 < n; ++j) off[j] = bond[j % 3];
  return ChainHamiltonian(std::move(diag), std::move(off));
}

ChainHamiltonian build_aah(std::size_t n_sites, double omega, double alpha, double phase,
                           double hop) {
  if (n_sites < 2) throw InvalidDimension("AAH chain needs at least two sites");
  std::vector<double> diag(n_sites);
  for (std::size_t j = 0; j < n_sites; ++j) {
    const double site = static_cast<double>(j + 1);
    diag[j] = omega * std::cos(2.0 * std::numbers::pi * site * alpha + phase);
  }
  std::vector<double> off(n_sites - 1, hop);
  return ChainHamiltonian(std::move(diag), std::move(off));
}

}  // namespace topochain
