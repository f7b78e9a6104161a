#include "topochain/schedule.hpp"

#include <cmath>
#include <numbers>

#include "topochain/errors.hpp"

namespace topochain {

std::string_view to_string(Param p) noexcept {
  switch (p) {
    case Param::a: return "a";
    case Param::b: return "b";
    case Param::c: return "c";
    case Param::u: return "u";
    case Param::v: return "v";
    case Param::w: return "w";
  }
  return "?";
}

Param param_from_string(std::string_view name) {
  if (name == "a") return Param::a;
  if (name == "b") return Param::b;
  if (name == "c") return Param::c;
  if (name == "u") return Param::u;
  if (name == "v") return Param::v;
  if (name == "w") return Param::w;
  throw SchemaError({"unknown schedule parameter '" + std::string(name) + "'"});
}

std::vector<Param> required_params(ModelKind kind) {
  switch (kind) {
    case ModelKind::ssh: return {Param::a, Param::b};
    case ModelKind::rice_mele: return {Param::a, Param::b, Param::u};
    case ModelKind::trimer: return {Param::a, Param::b, Param::c, Param::u, Param::v, Param::w};
    case ModelKind::aah: return {};
  }
  return {};
}

std::string_view to_string(TermForm f) noexcept {
  switch (f) {
    case TermForm::constant: return "constant";
    case TermForm::sine: return "sin";
    case TermForm::cosine: return "cos";
    case TermForm::ramp: return "ramp";
  }
  return "?";
}

TermForm term_form_from_string(std::string_view name) {
  if (name == "constant") return TermForm::constant;
  if (name == "sin") return TermForm::sine;
  if (name == "cos") return TermForm::cosine;
  if (name == "ramp") return TermForm::ramp;
  throw SchemaError({"unknown term form '" + std::string(name) + "'"});
}

double ParamTerm::operator()(double t, double period) const noexcept {
  const double theta = 2.0 * std::numbers::pi * frequency_multiple * t / period + phase;
  switch (form) {
    case TermForm::constant: return offset + amplitude;
    case TermForm::sine: return offset + amplitude * std::sin(theta);
    case TermForm::cosine: return offset + amplitude * std::cos(theta);
    case TermForm::ramp: return offset + amplitude * theta / (2.0 * std::numbers::pi);
  }
  return offset;
}

bool Schedule::periodic() const noexcept {
  for (const auto& [p, term] : params) {
    if (term.form == TermForm::constant) continue;
    if (term.form == TermForm::ramp && term.amplitude != 0.0) return false;
    if (term.frequency_multiple != std::round(term.frequency_multiple)) return false;
  }
  return true;
}

double Schedule::value(Param p, double t) const {
  const auto it = params.find(p);
  if (it == params.end()) {
    throw SchemaError({"schedule has no parameter '" + std::string(to_string(p)) + "'"});
  }
  return it->second(t, period);
}

void Schedule::validate(ModelKind kind) const {
  if (!(period > 0.0) || !std::isfinite(period)) {
    throw InvalidParameter("schedule period must be positive and finite");
  }
  if (cycles < 1) throw InvalidParameter("schedule cycles must be at least 1");
  if (kind == ModelKind::aah) {
    throw SchemaError({"kind 'aah' has no schedulable parameters"});
  }
  const auto need = required_params(kind);
  std::vector<std::string> violations;
  for (Param p : need) {
    if (!params.contains(p))
      violations.push_back("missing parameter '" + std::string(to_string(p)) + "' for kind '" +
                           std::string(to_string(kind)) + "'");
  }
  for (const auto& [p, term] : params) {
    bool wanted = false;
    for (Param q : need) wanted = wanted || q == p;
    if (!wanted)
      violations.push_back("parameter '" + std::string(to_string(p)) +
                           "' is not used by kind '" + std::string(to_string(kind)) + "'");
    const double probe[] = {term.amplitude, term.offset, term.frequency_multiple, term.phase};
    for (double x : probe) {
      if (!std::isfinite(x)) {
        violations.push_back("parameter '" + std::string(to_string(p)) + "' has non-finite fields");
        break;
      }
    }
  }
  if (!violations.empty()) throw SchemaError(std::move(violations));
}

ChainHamiltonian sample_schedule(const Schedule& s, ModelKind kind, std::size_t cells, double t) {
  s.validate(kind);
  const double slack = 1e-9 * s.period;
  if (!(t >= -slack && t <= s.duration() + slack)) {
    throw InvalidParameter("time " + std::to_string(t) + " outside schedule window [0, " +
                           std::to_string(s.duration()) + "]");
  }
  const double a = s.value(Param::a, t);
  const double b = s.value(Param::b, t);
  switch (kind) {
    case ModelKind::ssh: return build_ssh(cells, a, b);
    case ModelKind::rice_mele: return build_rice_mele(cells, a, b, s.value(Param::u, t));
    case ModelKind::trimer:
      return build_trimer(cells, a, b, s.value(Param::c, t), s.value(Param::u, t),
                          s.value(Param::v, t), s.value(Param::w, t));
    case ModelKind::aah: break;
  }
  throw SchemaError({"kind 'aah' has no schedulable parameters"});
}

namespace {

ParamTerm constant(double value) { return {TermForm::constant, value, 0.0, 1.0, 0.0}; }

}  // namespace

Schedule standard_pump(double period, int cycles) {
  Schedule s{period, cycles, {}};
  s.params[Param::a] = {TermForm::cosine, -1.0, 1.0, 1.0, 0.0};
  s.params[Param::b] = constant(1.0);
  s.params[Param::u] = {TermForm::sine, 1.0, 0.0, 1.0, 0.0};
  return s;
}

Schedule optimized_pump(double period, int cycles) {
  Schedule s{period, cycles, {}};
  s.params[Param::a] = {TermForm::cosine, -0.5, 0.5, 1.0, 0.0};
  s.params[Param::b] = constant(1.0);
  s.params[Param::u] = {TermForm::sine, 0.25, 0.0, 1.0, 0.0};
  return s;
}

Schedule trimer_bell_transfer(double period, int cycles) {
  Schedule s{period, cycles, {}};
  s.params[Param::a] = {TermForm::cosine, -0.9, 1.0, 1.0, 0.0};
  s.params[Param::b] = {TermForm::cosine, -0.9, 1.0, 1.0, 0.0};
  s.params[Param::c] = constant(1.0);
  s.params[Param::u] = {TermForm::cosine, 1.0, 1.0, 0.5, 0.0};
  s.params[Param::v] = constant(2.0);
  s.params[Param::w] = {TermForm::cosine, -1.0, 1.0, 0.5, 0.0};
  return s;
}

}  // namespace topochain
