#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "topochain/chain.hpp"

namespace topochain {

enum class Param { a, b, c, u, v, w };

std::string_view to_string(Param p) noexcept;
Param param_from_string(std::string_view name);

/// Parameters each schedulable model consumes. AAH is static and has none.
std::vector<Param> required_params(ModelKind kind);

enum class TermForm { constant, sine, cosine, ramp };

std::string_view to_string(TermForm f) noexcept;
TermForm term_form_from_string(std::string_view name);

/// value(t) = offset + amplitude * f(theta), theta = 2 pi m t / T + phase, where
/// f is 1, sin, cos or theta / (2 pi) for constant, sine, cosine and ramp.
struct ParamTerm {
  TermForm form = TermForm::constant;
  double amplitude = 0.0;
  double offset = 0.0;
  double frequency_multiple = 1.0;
  double phase = 0.0;

  double operator()(double t, double period) const noexcept;
  friend bool operator==(const ParamTerm&, const ParamTerm&) = default;
};

struct Schedule {
  double period = 1.0;
  int cycles = 1;
  std::map<Param, ParamTerm> params;

  double duration() const noexcept { return period * cycles; }

  /// True when every term repeats after one period (integer frequency multiples,
  /// no ramps).
  bool periodic() const noexcept;

  double value(Param p, double t) const;

  /// Throws SchemaError listing every missing or extra parameter for kind, or
  /// InvalidParameter for a non-positive period or cycle count.
  void validate(ModelKind kind) const;

  friend bool operator==(const Schedule&, const Schedule&) = default;
};

/// Chain Hamiltonian at time t in [0, cycles * T]; unused parameters default to
/// the unit intercell coupling (b = 1) or zero.
ChainHamiltonian sample_schedule(const Schedule& s, ModelKind kind, std::size_t cells, double t);

/// a = 1 - cos, b = 1, u = sin.
Schedule standard_pump(double period, int cycles = 1);

/// a = 0.5 (1 - cos), b = 1, u = 0.25 sin.
Schedule optimized_pump(double period, int cycles = 1);

/// a = b = 1 - 0.9 cos(2 pi t / T), c = 1, v = 2, u = 1 + cos(pi t / T),
/// w = 1 - cos(pi t / T). Each period T moves a Bell pair across the chain once;
/// u and w only repeat after 2T.
Schedule trimer_bell_transfer(double period, int cycles = 1);

}  // namespace topochain
