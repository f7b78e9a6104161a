#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "topochain/chain.hpp"
#include "topochain/dynamics.hpp"
#include "topochain/fluxcircuit.hpp"
#include "topochain/integrators.hpp"
#include "topochain/schedule.hpp"

namespace topochain {

using json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

enum class Command { spectrum, pump, quench, lz, trimer, couplings, fluxqubit };

std::string_view to_string(Command c) noexcept;
std::optional<Command> command_from_string(std::string_view name) noexcept;
std::vector<std::string> command_names();

/// Static chain given by flat keys: kind, L (or n_sites for aah) and the
/// numeric parameters the kind takes.
struct ModelSpec {
  ModelKind kind = ModelKind::ssh;
  std::size_t size = 1;  // cells, or sites for aah
  std::map<std::string, double> values;

  ChainHamiltonian build() const;
  /// Copy with one numeric parameter replaced.
  ModelSpec with(const std::string& key, double value) const;
  std::size_t n_sites() const noexcept;
};

struct Range {
  double from = 0.0;
  double to = 0.0;
  std::size_t points = 2;

  double at(std::size_t k) const noexcept;
};

struct SweepSpec {
  std::string param;
  Range range;
  std::vector<double> eigenvectors_at;
};

struct ScheduleSpec {
  ModelKind kind = ModelKind::rice_mele;
  std::size_t cells = 1;
  Schedule schedule;
};

/// sites are 1-based; weights default to all ones.
struct SiteState {
  std::vector<std::size_t> sites;
  std::optional<std::vector<double>> weights;

  StateVector build(std::size_t n_sites) const;
};

struct IntegratorSpec {
  std::optional<std::string> method;
  std::optional<double> rel_tol, abs_tol, max_step;

  IntegratorConfig build() const;
};

struct SpectrumParams {
  std::optional<ModelSpec> model;
  std::optional<SweepSpec> sweep;
  std::optional<ScheduleSpec> schedule;
  std::optional<std::size_t> n_times;
  std::optional<bool> eigenvectors;
};

struct PumpParams {
  ScheduleSpec schedule;
  SiteState initial;
  std::optional<SiteState> target;
  std::optional<std::size_t> records_per_cycle;
};

struct DisorderParams {
  double sigma = 0.0;
  std::vector<std::string> targets;
};

struct QuenchParams {
  ModelSpec model;
  std::size_t flip_site = 1;
  double t_end = 1.0;
  std::optional<std::size_t> n_records;
  std::optional<DisorderParams> disorder;
};

struct LzParams {
  std::string path;  // A, B, C or schedule
  std::optional<double> alpha, T, theta;
  std::optional<ScheduleSpec> schedule;
  std::string initial = "L";
  std::optional<std::size_t> n_records;
};

struct TrimerParams {
  ScheduleSpec schedule;
  std::vector<std::string> bell_signs;
  std::optional<std::size_t> records_per_cycle;
};

struct CouplingsParams {
  std::string scheme;
  double a = 1.0;
  double b = 1.0;
  Range alpha_1, alpha_2;
  std::optional<int> n_max;
};

struct FluxParams {
  /// Circuit fields that override the FluxQubitSpec defaults.
  std::map<std::string, double> circuit;
  double f_alpha = 0.0;
  std::pair<double, double> f_eps_range{-0.05, 0.05};
  std::size_t sweep_points = 41;
  std::size_t levels = 4;
  std::optional<Range> gap_sweep;

  FluxQubitSpec spec() const;
};

using CommandParams = std::variant<SpectrumParams, PumpParams, QuenchParams, LzParams,
                                   TrimerParams, CouplingsParams, FluxParams>;

struct ExperimentConfig {
  int schema = kSchemaVersion;
  Command command = Command::spectrum;
  std::optional<std::string> output;
  std::optional<std::uint64_t> seed;
  std::optional<IntegratorSpec> integrator;
  CommandParams params;

  std::string output_stem() const;
  IntegratorConfig integrator_config() const;
};

/// Parses and validates; throws SchemaError listing every violation (unknown or
/// missing keys, wrong types, values out of range) or on malformed JSON.
ExperimentConfig parse_config(std::string_view text);
ExperimentConfig parse_config(const json& doc);
inline ExperimentConfig parse_config(const std::string& text) { return parse_config(std::string_view(text)); }
inline ExperimentConfig parse_config(const char* text) { return parse_config(std::string_view(text)); }

/// Canonical JSON: exactly the keys that were supplied, in schema order.
json to_json(const ExperimentConfig& cfg);

json schedule_to_json(const ScheduleSpec& s);
ScheduleSpec schedule_from_json(const json& j);

}  // namespace topochain
