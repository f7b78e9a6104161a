#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "topochain/config.hpp"

namespace topochain {

inline constexpr std::string_view kToolVersion = "0.1.0";

struct RunOptions {
  std::filesystem::path out_dir = ".";
  unsigned threads = 1;
  bool amplitudes = false;
  /// Replaces the config seed when set.
  std::optional<std::uint64_t> seed;
};

/// One data file before it is written.
struct Artifact {
  std::string name;
  std::string text;
  std::size_t rows = 0;
};

struct ComputeResult {
  std::vector<Artifact> files;
  /// Scalar results worth keeping next to the data (fidelities, path class...).
  json summary = json::object();
};

/// Runs the experiment in memory. Deterministic in (config, seed).
ComputeResult compute(const ExperimentConfig& cfg, const RunOptions& opt);

struct WrittenFile {
  std::filesystem::path path;
  std::string sha256;
  std::size_t bytes = 0;
  std::size_t rows = 0;
};

struct RunReport {
  std::vector<WrittenFile> files;
  std::filesystem::path manifest;
  json summary;
  double wall_seconds = 0.0;
};

/// compute(), then writes every file plus <stem>.manifest.json into out_dir
/// and reads each back to check size and checksum. Any failure throws Error
/// with the command name in the message.
RunReport run(const ExperimentConfig& cfg, const RunOptions& opt);

/// Runs every bundled config of a figure id.
std::vector<RunReport> reproduce(const std::string& id, const RunOptions& opt);

/// Lower-case hex SHA-256.
std::string sha256_hex(std::string_view data);

}  // namespace topochain
