#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "topochain/dynamics.hpp"
#include "topochain/spectra.hpp"

namespace topochain {

/// Shortest decimal that round-trips to the same double ("." separator).
std::string format_number(double x);

/// Comma-separated table with a mandatory header and LF line endings.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);

  void add_row(const std::vector<double>& values);
  std::size_t columns() const noexcept { return header_.size(); }
  std::size_t rows() const noexcept { return rows_; }
  const std::string& text() const noexcept { return text_; }

 private:
  std::vector<std::string> header_;
  std::string text_;
  std::size_t rows_ = 0;
};

/// Columns coord, E_1..E_n, edge_flag_1..edge_flag_n (flags as 0/1).
CsvTable spectrum_trace_csv(const SpectrumTrace& trace, std::string_view coord = "t");

/// Columns level, E, edge_flag, then v_1..v_n when with_vectors is set.
CsvTable spectrum_csv(const Spectrum& sp, std::size_t edge_sites, bool with_vectors);

/// Columns t, sz_1..sz_n, and re_1, im_1, ... when amplitudes is set.
CsvTable trajectory_csv(const Trajectory& traj, bool amplitudes);

}  // namespace topochain
