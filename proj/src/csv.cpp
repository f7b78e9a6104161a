#include "topochain/csv.hpp"

#include <charconv>
#include <cmath>

#include "topochain/errors.hpp"

namespace topochain {

std::string format_number(double x) {
  if (!std::isfinite(x)) throw NumericError("cannot export non-finite value to CSV");
  if (x == 0.0) x = 0.0;  // drop the sign of negative zero
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

CsvTable::CsvTable(std::vector<std::string> header) : header_(std::move(header)) {
  if (header_.empty()) throw InvalidDimension("CSV table needs at least one column");
  for (std::size_t i = 0; i < header_.size(); ++i) {
    if (i) text_ += ',';
    text_ += header_[i];
  }
  text_ += '\n';
}

void CsvTable::add_row(const std::vector<double>& values) {
  if (values.size() != header_.size())
    throw InvalidDimension("CSV row has " + std::to_string(values.size()) + " fields, header has " +
                           std::to_string(header_.size()));
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) text_ += ',';
    text_ += format_number(values[i]);
  }
  text_ += '\n';
  ++rows_;
}

CsvTable spectrum_trace_csv(const SpectrumTrace& trace, std::string_view coord) {
  const std::size_t n = trace.spectra.empty() ? 0 : trace.spectra.front().n;
  std::vector<std::string> header{std::string(coord)};
  for (std::size_t j = 1; j <= n; ++j) header.push_back("E_" + std::to_string(j));
  for (std::size_t j = 1; j <= n; ++j) header.push_back("edge_flag_" + std::to_string(j));
  CsvTable table(std::move(header));
  for (std::size_t t = 0; t < trace.spectra.size(); ++t) {
    std::vector<double> row{trace.times[t]};
    for (double e : trace.spectra[t].eigenvalues) row.push_back(e);
    for (bool f : trace.edge_flags[t]) row.push_back(f ? 1.0 : 0.0);
    table.add_row(row);
  }
  return table;
}

CsvTable spectrum_csv(const Spectrum& sp, std::size_t edge_sites, bool with_vectors) {
  std::vector<std::string> header{"level", "E", "edge_flag"};
  if (with_vectors)
    for (std::size_t j = 1; j <= sp.n; ++j) header.push_back("v_" + std::to_string(j));
  CsvTable table(std::move(header));
  for (std::size_t l = 0; l < sp.n; ++l) {
    std::vector<double> row{static_cast<double>(l + 1), sp.eigenvalues[l],
                            edge_weight(sp.vector(l), edge_sites) >= 0.5 ? 1.0 : 0.0};
    if (with_vectors)
      for (double x : sp.vector(l)) row.push_back(x);
    table.add_row(row);
  }
  return table;
}

CsvTable trajectory_csv(const Trajectory& traj, bool amplitudes) {
  const std::size_t n = traj.states.empty() ? 0 : traj.states.front().size();
  std::vector<std::string> header{"t"};
  for (std::size_t j = 1; j <= n; ++j) header.push_back("sz_" + std::to_string(j));
  if (amplitudes) {
    for (std::size_t j = 1; j <= n; ++j) {
      header.push_back("re_" + std::to_string(j));
      header.push_back("im_" + std::to_string(j));
    }
  }
  CsvTable table(std::move(header));
  for (std::size_t k = 0; k < traj.size(); ++k) {
    std::vector<double> row{traj.times[k]};
    for (double s : traj.sz[k]) row.push_back(s);
    if (amplitudes) {
      for (const cplx& z : traj.states[k].amplitudes()) {
        row.push_back(z.real());
        row.push_back(z.imag());
      }
    }
    table.add_row(row);
  }
  return table;
}

}  // namespace topochain
