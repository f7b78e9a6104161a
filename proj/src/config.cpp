#include "topochain/config.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "topochain/errors.hpp"

namespace topochain {

std::string_view to_string(Command c) noexcept {
  switch (c) {
    case Command::spectrum: return "spectrum";
    case Command::pump: return "pump";
    case Command::quench: return "quench";
    case Command::lz: return "lz";
    case Command::trimer: return "trimer";
    case Command::couplings: return "couplings";
    case Command::fluxqubit: return "fluxqubit";
  }
  return "?";
}

std::optional<Command> command_from_string(std::string_view name) noexcept {
  for (Command c : {Command::spectrum, Command::pump, Command::quench, Command::lz,
                    Command::trimer, Command::couplings, Command::fluxqubit})
    if (to_string(c) == name) return c;
  return std::nullopt;
}

std::vector<std::string> command_names() {
  return {"spectrum", "pump", "quench", "lz", "trimer", "couplings", "fluxqubit"};
}

namespace {

struct ModelKeys {
  const char* size_key;
  std::vector<std::string> required;
  std::vector<std::string> optional;
};

ModelKeys model_keys(ModelKind kind) {
  switch (kind) {
    case ModelKind::ssh: return {"L", {"a", "b"}, {"omega"}};
    case ModelKind::rice_mele: return {"L", {"a", "b", "u"}, {}};
    case ModelKind::trimer: return {"L", {"a", "b", "c", "u", "v", "w"}, {}};
    case ModelKind::aah: return {"n_sites", {"omega", "alpha", "hop"}, {"phase"}};
  }
  return {"L", {}, {}};
}

const std::vector<std::string>& all_model_keys() {
  static const std::vector<std::string> keys{"a",     "b",     "c",   "u", "v",      "w",
                                             "omega", "alpha", "phase", "hop", "L", "n_sites"};
  return keys;
}

}  // namespace

ChainHamiltonian ModelSpec::build() const {
  auto v = [this](const char* k, double fallback = 0.0) {
    const auto it = values.find(k);
    return it == values.end() ? fallback : it->second;
  };
  switch (kind) {
    case ModelKind::ssh: return build_ssh(size, v("a"), v("b"), v("omega"));
    case ModelKind::rice_mele: return build_rice_mele(size, v("a"), v("b"), v("u"));
    case ModelKind::trimer:
      return build_trimer(size, v("a"), v("b"), v("c"), v("u"), v("v"), v("w"));
    case ModelKind::aah: return build_aah(size, v("omega"), v("alpha"), v("phase"), v("hop"));
  }
  throw SchemaError({"unknown model kind"});
}

ModelSpec ModelSpec::with(const std::string& key, double value) const {
  ModelSpec copy = *this;
  copy.values[key] = value;
  return copy;
}

std::size_t ModelSpec::n_sites() const noexcept {
  return kind == ModelKind::aah ? size : size * cell_size(kind);
}

double Range::at(std::size_t k) const noexcept {
  if (points <= 1) return from;
  if (k + 1 == points) return to;
  return from + (to - from) * static_cast<double>(k) / static_cast<double>(points - 1);
}

StateVector SiteState::build(std::size_t n_sites) const {
  std::vector<cplx> w;
  if (weights) {
    for (double x : *weights) w.emplace_back(x, 0.0);
  } else {
    w.assign(sites.size(), cplx(1.0, 0.0));
  }
  return StateVector::superposition(n_sites, sites, w);
}

IntegratorConfig IntegratorSpec::build() const {
  IntegratorConfig cfg;
  if (method) cfg.method = integrator_method_from_string(*method);
  if (rel_tol) cfg.rel_tol = *rel_tol;
  if (abs_tol) cfg.abs_tol = *abs_tol;
  if (max_step) cfg.max_step = *max_step;
  cfg.validate();
  return cfg;
}

FluxQubitSpec FluxParams::spec() const {
  FluxQubitSpec s;
  for (const auto& [k, v] : circuit) {
    if (k == "EJ") s.EJ = v;
    else if (k == "EJ_over_EC") s.EJ_over_EC = v;
    else if (k == "EC") s.EC = v;
    else if (k == "alpha") s.alpha = v;
    else if (k == "beta") s.beta = v;
    else if (k == "kappa") s.kappa = v;
    else if (k == "N") s.N = static_cast<int>(v);
    else if (k == "n") s.n = static_cast<int>(v);
    else if (k == "charge_cutoff") s.charge_cutoff = static_cast<int>(v);
  }
  return s;
}

std::string ExperimentConfig::output_stem() const {
  return output ? *output : std::string(to_string(command));
}

IntegratorConfig ExperimentConfig::integrator_config() const {
  return integrator ? integrator->build() : IntegratorConfig{};
}

namespace {

using Violations = std::vector<std::string>;

// Strict reader over one JSON object: every key must be consumed.
class Reader {
 public:
  Reader(const json& j, std::string path, Violations& v) : j_(j), path_(std::move(path)), v_(v) {
    if (!j_.is_object()) {
      v_.push_back("'" + (path_.empty() ? std::string("<root>") : path_) + "' must be an object");
      ok_ = false;
    }
  }

  std::string name(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

  bool has(const std::string& key) const { return ok_ && j_.contains(key); }

  const json* raw(const std::string& key) {
    if (!has(key)) return nullptr;
    seen_.insert(key);
    return &j_.at(key);
  }

  void missing(const std::string& key) { v_.push_back("missing required key '" + name(key) + "'"); }
  void bad(const std::string& key, const std::string& what) {
    v_.push_back("key '" + name(key) + "' " + what);
  }

  std::optional<double> number(const std::string& key) {
    const json* x = raw(key);
    if (!x) return std::nullopt;
    if (!x->is_number()) {
      bad(key, "must be a number");
      return std::nullopt;
    }
    const double d = x->get<double>();
    if (!std::isfinite(d)) {
      bad(key, "must be finite");
      return std::nullopt;
    }
    return d;
  }

  std::optional<long long> integer(const std::string& key, long long lo = 0) {
    const json* x = raw(key);
    if (!x) return std::nullopt;
    if (!x->is_number_integer()) {
      bad(key, "must be an integer");
      return std::nullopt;
    }
    const long long n = x->get<long long>();
    if (n < lo) {
      bad(key, "must be >= " + std::to_string(lo));
      return std::nullopt;
    }
    return n;
  }

  std::optional<std::string> string(const std::string& key) {
    const json* x = raw(key);
    if (!x) return std::nullopt;
    if (!x->is_string()) {
      bad(key, "must be a string");
      return std::nullopt;
    }
    return x->get<std::string>();
  }

  std::optional<bool> boolean(const std::string& key) {
    const json* x = raw(key);
    if (!x) return std::nullopt;
    if (!x->is_boolean()) {
      bad(key, "must be true or false");
      return std::nullopt;
    }
    return x->get<bool>();
  }

  template <class T>
  std::optional<std::vector<T>> array(const std::string& key) {
    const json* x = raw(key);
    if (!x) return std::nullopt;
    if (!x->is_array()) {
      bad(key, "must be an array");
      return std::nullopt;
    }
    std::vector<T> out;
    for (const auto& e : *x) {
      if constexpr (std::is_same_v<T, std::string>) {
        if (!e.is_string()) {
          bad(key, "must contain strings");
          return std::nullopt;
        }
      } else if constexpr (std::is_integral_v<T>) {
        if (!e.is_number_integer() || e.get<long long>() < 0) {
          bad(key, "must contain non-negative integers");
          return std::nullopt;
        }
      } else {
        if (!e.is_number()) {
          bad(key, "must contain numbers");
          return std::nullopt;
        }
      }
      out.push_back(e.get<T>());
    }
    return out;
  }

  void mark(const std::string& key) { seen_.insert(key); }

  void finish() {
    if (!ok_) return;
    for (const auto& [k, val] : j_.items())
      if (!seen_.contains(k)) v_.push_back("unknown key '" + name(k) + "'");
  }

 private:
  const json& j_;
  std::string path_;
  Violations& v_;
  std::set<std::string> seen_;
  bool ok_ = true;
};

template <class T>
T require(std::optional<T> x, Reader& r, const std::string& key, T fallback = T{}) {
  if (x) return *x;
  if (!r.has(key)) r.missing(key);
  return fallback;
}

std::optional<ModelKind> parse_kind(Reader& r, const std::string& key) {
  const auto name = r.string(key);
  if (!name) {
    if (!r.has(key)) r.missing(key);
    return std::nullopt;
  }
  for (ModelKind k : {ModelKind::ssh, ModelKind::rice_mele, ModelKind::trimer, ModelKind::aah})
    if (to_string(k) == *name) return k;
  r.bad(key, "has unknown model kind '" + *name + "'");
  return std::nullopt;
}

std::optional<ModelSpec> parse_model(Reader& r, Violations& v) {
  const auto kind = parse_kind(r, "kind");
  if (!kind) {
    for (const auto& k : all_model_keys()) r.mark(k);
    return std::nullopt;
  }
  ModelSpec m;
  m.kind = *kind;
  const ModelKeys keys = model_keys(*kind);
  const std::string kind_name(to_string(*kind));
  for (const auto& k : all_model_keys()) {
    const bool allowed = k == keys.size_key ||
                         std::find(keys.required.begin(), keys.required.end(), k) != keys.required.end() ||
                         std::find(keys.optional.begin(), keys.optional.end(), k) != keys.optional.end();
    if (!allowed && r.has(k)) {
      r.mark(k);
      v.push_back("key '" + r.name(k) + "' is not allowed for kind '" + kind_name + "'");
    }
  }
  const long long min_size = *kind == ModelKind::aah ? 2 : 1;
  m.size = static_cast<std::size_t>(require(r.integer(keys.size_key, min_size), r, keys.size_key, min_size));
  for (const auto& k : keys.required) m.values[k] = require(r.number(k), r, k);
  for (const auto& k : keys.optional)
    if (auto x = r.number(k)) m.values[k] = *x;
  return m;
}

json model_to_json(const ModelSpec& m, json j) {
  j["kind"] = std::string(to_string(m.kind));
  j[model_keys(m.kind).size_key] = m.size;
  for (const auto& [k, val] : m.values) j[k] = val;
  return j;
}

std::optional<Range> parse_range(const json* x, const std::string& path, Violations& v,
                                 std::size_t min_points = 1) {
  if (!x) return std::nullopt;
  Reader r(*x, path, v);
  Range out;
  out.from = require(r.number("from"), r, "from");
  out.to = require(r.number("to"), r, "to");
  out.points = static_cast<std::size_t>(
      require(r.integer("points", static_cast<long long>(min_points)), r, "points",
              static_cast<long long>(min_points)));
  r.finish();
  return out;
}

json range_to_json(const Range& r) { return json{{"from", r.from}, {"to", r.to}, {"points", r.points}}; }

std::optional<ScheduleSpec> parse_schedule(const json* x, const std::string& path, Violations& v) {
  if (!x) return std::nullopt;
  Reader r(*x, path, v);
  ScheduleSpec s;
  const auto kind = parse_kind(r, "kind");
  s.cells = static_cast<std::size_t>(require(r.integer("L", 1), r, "L", 1LL));
  s.schedule.period = require(r.number("T"), r, "T", 1.0);
  s.schedule.cycles = static_cast<int>(require(r.integer("cycles", 1), r, "cycles", 1LL));
  if (!(s.schedule.period > 0.0)) r.bad("T", "must be positive");
  const json* params = r.raw("params");
  if (!params) {
    r.missing("params");
  } else {
    Reader pr(*params, r.name("params"), v);
    for (const auto& [name, term] : params->items()) {
      pr.mark(name);
      Param p;
      try {
        p = param_from_string(name);
      } catch (const SchemaError&) {
        v.push_back("unknown schedule parameter '" + pr.name(name) + "'");
        continue;
      }
      Reader tr(term, pr.name(name), v);
      ParamTerm t;
      if (auto form = tr.string("form")) {
        try {
          t.form = term_form_from_string(*form);
        } catch (const SchemaError&) {
          tr.bad("form", "must be one of constant, sin, cos, ramp");
        }
      } else if (!tr.has("form")) {
        tr.missing("form");
      }
      if (auto a = tr.number("amplitude")) t.amplitude = *a;
      if (auto o = tr.number("offset")) t.offset = *o;
      if (auto f = tr.number("frequency_multiple")) t.frequency_multiple = *f;
      if (auto ph = tr.number("phase")) t.phase = *ph;
      tr.finish();
      s.schedule.params[p] = t;
    }
  }
  r.finish();
  if (kind) {
    s.kind = *kind;
    try {
      s.schedule.validate(*kind);
    } catch (const SchemaError& e) {
      for (const auto& msg : e.violations()) v.push_back(path + ": " + msg);
    } catch (const Error& e) {
      v.push_back(path + ": " + e.what());
    }
  }
  return s;
}

std::optional<SiteState> parse_sites(const json* x, const std::string& path, Violations& v) {
  if (!x) return std::nullopt;
  Reader r(*x, path, v);
  SiteState s;
  s.sites = require(r.array<std::size_t>("sites"), r, "sites");
  s.weights = r.array<double>("weights");
  if (s.sites.empty()) r.bad("sites", "must not be empty");
  if (s.weights && s.weights->size() != s.sites.size()) r.bad("weights", "must match sites in length");
  for (std::size_t site : s.sites)
    if (site == 0) r.bad("sites", "are 1-based");
  r.finish();
  return s;
}

json sites_to_json(const SiteState& s) {
  json j{{"sites", s.sites}};
  if (s.weights) j["weights"] = *s.weights;
  return j;
}

std::optional<IntegratorSpec> parse_integrator(const json* x, Violations& v) {
  if (!x) return std::nullopt;
  Reader r(*x, "integrator", v);
  IntegratorSpec s;
  s.method = r.string("method");
  if (s.method && *s.method != "bdf" && *s.method != "rk4") r.bad("method", "must be bdf or rk4");
  s.rel_tol = r.number("rel_tol");
  s.abs_tol = r.number("abs_tol");
  s.max_step = r.number("max_step");
  if (s.rel_tol && !(*s.rel_tol > 0)) r.bad("rel_tol", "must be positive");
  if (s.abs_tol && !(*s.abs_tol > 0)) r.bad("abs_tol", "must be positive");
  if (s.max_step && !(*s.max_step > 0)) r.bad("max_step", "must be positive");
  r.finish();
  return s;
}

json integrator_to_json(const IntegratorSpec& s) {
  json j = json::object();
  if (s.method) j["method"] = *s.method;
  if (s.rel_tol) j["rel_tol"] = *s.rel_tol;
  if (s.abs_tol) j["abs_tol"] = *s.abs_tol;
  if (s.max_step) j["max_step"] = *s.max_step;
  return j;
}

const std::vector<std::string>& flux_circuit_keys() {
  static const std::vector<std::string> keys{"EJ",   "EJ_over_EC", "EC", "alpha",        "beta",
                                             "kappa", "N",         "n",  "charge_cutoff"};
  return keys;
}

bool flux_integer_key(const std::string& k) { return k == "N" || k == "n" || k == "charge_cutoff"; }

SpectrumParams parse_spectrum(Reader& r, Violations& v) {
  SpectrumParams p;
  p.schedule = parse_schedule(r.raw("schedule"), "schedule", v);
  if (p.schedule) {
    if (auto n = r.integer("n_times", 2)) p.n_times = static_cast<std::size_t>(*n);
    return p;
  }
  p.model = parse_model(r, v);
  if (const json* sw = r.raw("sweep")) {
    Reader sr(*sw, "sweep", v);
    SweepSpec s;
    s.param = require(sr.string("param"), sr, "param");
    if (p.model) {
      const auto& m = *p.model;
      if (!m.values.contains(s.param)) sr.bad("param", "must name a numeric parameter of the model");
    }
    s.range.from = require(sr.number("from"), sr, "from");
    s.range.to = require(sr.number("to"), sr, "to");
    s.range.points = static_cast<std::size_t>(require(sr.integer("points", 2), sr, "points", 2LL));
    if (!(s.range.to > s.range.from)) sr.bad("to", "must exceed 'from'");
    if (auto at = sr.array<double>("eigenvectors_at")) s.eigenvectors_at = *at;
    sr.finish();
    p.sweep = s;
  } else {
    p.eigenvectors = r.boolean("eigenvectors");
  }
  return p;
}

PumpParams parse_pump(Reader& r, Violations& v) {
  PumpParams p;
  if (auto s = parse_schedule(r.raw("schedule"), "schedule", v)) p.schedule = *s;
  else r.missing("schedule");
  if (auto s = parse_sites(r.raw("initial"), "initial", v)) p.initial = *s;
  else r.missing("initial");
  p.target = parse_sites(r.raw("target"), "target", v);
  if (auto n = r.integer("records_per_cycle", 1)) p.records_per_cycle = static_cast<std::size_t>(*n);
  const std::size_t n_sites = p.schedule.cells * cell_size(p.schedule.kind);
  for (const auto& [key, st] : {std::pair{"initial", &p.initial},
                                 std::pair{"target", p.target ? &*p.target : nullptr}}) {
    if (!st) continue;
    for (std::size_t site : st->sites)
      if (site > n_sites)
        v.push_back(std::string("key '") + key + ".sites': site " + std::to_string(site) +
                    " exceeds the chain length " + std::to_string(n_sites));
  }
  return p;
}

QuenchParams parse_quench(Reader& r, Violations& v) {
  QuenchParams p;
  if (auto m = parse_model(r, v)) p.model = *m;
  p.flip_site = static_cast<std::size_t>(require(r.integer("flip_site", 1), r, "flip_site", 1LL));
  p.t_end = require(r.number("t_end"), r, "t_end", 1.0);
  if (!(p.t_end > 0)) r.bad("t_end", "must be positive");
  if (auto n = r.integer("n_records", 2)) p.n_records = static_cast<std::size_t>(*n);
  if (p.flip_site > p.model.n_sites()) r.bad("flip_site", "exceeds the chain length");
  if (const json* d = r.raw("disorder")) {
    Reader dr(*d, "disorder", v);
    DisorderParams dp;
    dp.sigma = require(dr.number("sigma"), dr, "sigma");
    if (dp.sigma < 0) dr.bad("sigma", "must be >= 0");
    dp.targets = require(dr.array<std::string>("targets"), dr, "targets");
    for (const auto& t : dp.targets)
      if (t != "diagonal" && t != "offdiagonal") dr.bad("targets", "must be diagonal and/or offdiagonal");
    dr.finish();
    p.disorder = dp;
  }
  return p;
}

LzParams parse_lz(Reader& r, Violations& v) {
  LzParams p;
  p.path = require(r.string("path"), r, "path");
  if (p.path != "A" && p.path != "B" && p.path != "C" && p.path != "schedule")
    r.bad("path", "must be A, B, C or schedule");
  p.alpha = r.number("alpha");
  p.T = r.number("T");
  p.theta = r.number("theta");
  p.schedule = parse_schedule(r.raw("schedule"), "schedule", v);
  if (p.path == "schedule") {
    if (!p.schedule) r.missing("schedule");
    if (p.alpha) r.bad("alpha", "is not used with path 'schedule'");
    if (p.T) r.bad("T", "is not used with path 'schedule'");
    if (p.schedule && p.schedule->kind != ModelKind::ssh && p.schedule->kind != ModelKind::rice_mele)
      r.bad("schedule", "must be an ssh or rice_mele schedule");
  } else {
    if (!p.alpha) r.missing("alpha");
    if (!p.T) r.missing("T");
    if (p.T && !(*p.T > 0)) r.bad("T", "must be positive");
    if (p.schedule) r.bad("schedule", "is only used with path 'schedule'");
  }
  if (p.path == "C") {
    if (!p.theta) r.missing("theta");
    else if (!(std::abs(*p.theta) < std::acos(0.0))) r.bad("theta", "must satisfy |theta| < pi/2");
  } else if (p.theta) {
    r.bad("theta", "is only used with path C");
  }
  if (auto init = r.string("initial")) {
    p.initial = *init;
    if (*init != "L" && *init != "R") r.bad("initial", "must be L or R");
  }
  if (auto n = r.integer("n_records", 2)) p.n_records = static_cast<std::size_t>(*n);
  return p;
}

TrimerParams parse_trimer(Reader& r, Violations& v) {
  TrimerParams p;
  if (auto s = parse_schedule(r.raw("schedule"), "schedule", v)) {
    p.schedule = *s;
    if (s->kind != ModelKind::trimer) r.bad("schedule", "must be a trimer schedule");
  } else {
    r.missing("schedule");
  }
  p.bell_signs = require(r.array<std::string>("bell_signs"), r, "bell_signs");
  if (p.bell_signs.empty()) r.bad("bell_signs", "must not be empty");
  for (const auto& s : p.bell_signs)
    if (s != "+" && s != "-") r.bad("bell_signs", "must contain '+' or '-'");
  if (auto n = r.integer("records_per_cycle", 1)) p.records_per_cycle = static_cast<std::size_t>(*n);
  return p;
}

CouplingsParams parse_couplings(Reader& r, Violations& v) {
  CouplingsParams p;
  p.scheme = require(r.string("scheme"), r, "scheme");
  if (p.scheme != "identical" && p.scheme != "matched") r.bad("scheme", "must be identical or matched");
  p.a = require(r.number("a"), r, "a", 1.0);
  p.b = require(r.number("b"), r, "b", 1.0);
  if (auto x = parse_range(r.raw("alpha_1"), "alpha_1", v)) p.alpha_1 = *x;
  else r.missing("alpha_1");
  if (auto x = parse_range(r.raw("alpha_2"), "alpha_2", v)) p.alpha_2 = *x;
  else r.missing("alpha_2");
  for (const auto& [key, rg] : {std::pair{"alpha_1", &p.alpha_1}, std::pair{"alpha_2", &p.alpha_2}})
    if (std::max(std::abs(rg->from), std::abs(rg->to)) >= 50.0)
      v.push_back(std::string("'") + key + "' must stay within |alpha| < 50");
  if (auto n = r.integer("n_max", 0)) {
    p.n_max = static_cast<int>(*n);
    if (p.scheme == "matched") r.bad("n_max", "is only used with scheme 'identical'");
  }
  return p;
}

FluxParams parse_flux(Reader& r, Violations& v) {
  FluxParams p;
  if (const json* c = r.raw("circuit")) {
    Reader cr(*c, "circuit", v);
    for (const auto& k : flux_circuit_keys()) {
      if (flux_integer_key(k)) {
        if (auto x = cr.integer(k, k == "charge_cutoff" ? 1 : -1000000)) p.circuit[k] = static_cast<double>(*x);
      } else if (auto x = cr.number(k)) {
        p.circuit[k] = *x;
      }
    }
    cr.finish();
    try {
      p.spec().validate();
    } catch (const Error& e) {
      v.push_back(std::string("circuit: ") + e.what());
    }
  }
  p.f_alpha = require(r.number("f_alpha"), r, "f_alpha");
  if (auto range = r.array<double>("f_eps_range")) {
    if (range->size() != 2 || !((*range)[1] > (*range)[0])) r.bad("f_eps_range", "must be [low, high] with low < high");
    else p.f_eps_range = {(*range)[0], (*range)[1]};
  } else if (!r.has("f_eps_range")) {
    r.missing("f_eps_range");
  }
  p.sweep_points = static_cast<std::size_t>(require(r.integer("sweep_points", 2), r, "sweep_points", 2LL));
  p.levels = static_cast<std::size_t>(require(r.integer("levels", 2), r, "levels", 2LL));
  if (p.levels > p.spec().dimension()) r.bad("levels", "exceeds the number of charge states");
  p.gap_sweep = parse_range(r.raw("gap_sweep"), "gap_sweep", v, 2);
  return p;
}

}  // namespace

ScheduleSpec schedule_from_json(const json& j) {
  Violations v;
  auto s = parse_schedule(&j, "schedule", v);
  if (!v.empty()) throw SchemaError(std::move(v));
  return *s;
}

json schedule_to_json(const ScheduleSpec& s) {
  json params = json::object();
  for (const auto& [p, t] : s.schedule.params) {
    params[std::string(to_string(p))] = json{{"form", std::string(to_string(t.form))},
                                             {"amplitude", t.amplitude},
                                             {"offset", t.offset},
                                             {"frequency_multiple", t.frequency_multiple},
                                             {"phase", t.phase}};
  }
  return json{{"kind", std::string(to_string(s.kind))},
              {"L", s.cells},
              {"T", s.schedule.period},
              {"cycles", s.schedule.cycles},
              {"params", params}};
}

ExperimentConfig parse_config(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SchemaError({std::string("malformed JSON: ") + e.what()});
  }
  return parse_config(doc);
}

ExperimentConfig parse_config(const json& doc) {
  Violations v;
  Reader r(doc, "", v);
  if (!doc.is_object()) throw SchemaError(std::move(v));
  ExperimentConfig cfg;
  if (auto s = r.integer("schema", 0)) {
    cfg.schema = static_cast<int>(*s);
    if (*s != kSchemaVersion) r.bad("schema", "must be " + std::to_string(kSchemaVersion));
  }
  const auto name = r.string("command");
  if (!name) {
    if (!r.has("command")) r.missing("command");
    throw SchemaError(std::move(v));
  }
  const auto command = command_from_string(*name);
  if (!command) {
    v.push_back("unknown command '" + *name + "'");
    throw SchemaError(std::move(v));
  }
  cfg.command = *command;
  cfg.output = r.string("output");
  if (cfg.output) {
    if (cfg.output->empty() || cfg.output->find('/') != std::string::npos ||
        cfg.output->find('\\') != std::string::npos || *cfg.output == "." || *cfg.output == "..")
      r.bad("output", "must be a plain file stem");
  }
  if (auto s = r.integer("seed", 0)) cfg.seed = static_cast<std::uint64_t>(*s);
  cfg.integrator = parse_integrator(r.raw("integrator"), v);

  switch (cfg.command) {
    case Command::spectrum: cfg.params = parse_spectrum(r, v); break;
    case Command::pump: cfg.params = parse_pump(r, v); break;
    case Command::quench: cfg.params = parse_quench(r, v); break;
    case Command::lz: cfg.params = parse_lz(r, v); break;
    case Command::trimer: cfg.params = parse_trimer(r, v); break;
    case Command::couplings: cfg.params = parse_couplings(r, v); break;
    case Command::fluxqubit: cfg.params = parse_flux(r, v); break;
  }
  r.finish();
  if (!v.empty()) throw SchemaError(std::move(v));
  return cfg;
}

json to_json(const ExperimentConfig& cfg) {
  json j;
  j["schema"] = cfg.schema;
  j["command"] = std::string(to_string(cfg.command));
  if (cfg.output) j["output"] = *cfg.output;
  if (cfg.seed) j["seed"] = *cfg.seed;
  if (cfg.integrator) j["integrator"] = integrator_to_json(*cfg.integrator);

  std::visit(
      [&j](const auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, SpectrumParams>) {
          if (p.schedule) {
            j["schedule"] = schedule_to_json(*p.schedule);
            if (p.n_times) j["n_times"] = *p.n_times;
          }
          if (p.model) j = model_to_json(*p.model, j);
          if (p.sweep) {
            json s{{"param", p.sweep->param},
                   {"from", p.sweep->range.from},
                   {"to", p.sweep->range.to},
                   {"points", p.sweep->range.points}};
            if (!p.sweep->eigenvectors_at.empty()) s["eigenvectors_at"] = p.sweep->eigenvectors_at;
            j["sweep"] = s;
          }
          if (p.eigenvectors) j["eigenvectors"] = *p.eigenvectors;
        } else if constexpr (std::is_same_v<T, PumpParams>) {
          j["schedule"] = schedule_to_json(p.schedule);
          j["initial"] = sites_to_json(p.initial);
          if (p.target) j["target"] = sites_to_json(*p.target);
          if (p.records_per_cycle) j["records_per_cycle"] = *p.records_per_cycle;
        } else if constexpr (std::is_same_v<T, QuenchParams>) {
          j = model_to_json(p.model, j);
          j["flip_site"] = p.flip_site;
          j["t_end"] = p.t_end;
          if (p.n_records) j["n_records"] = *p.n_records;
          if (p.disorder) j["disorder"] = json{{"sigma", p.disorder->sigma}, {"targets", p.disorder->targets}};
        } else if constexpr (std::is_same_v<T, LzParams>) {
          j["path"] = p.path;
          if (p.alpha) j["alpha"] = *p.alpha;
          if (p.T) j["T"] = *p.T;
          if (p.theta) j["theta"] = *p.theta;
          if (p.schedule) j["schedule"] = schedule_to_json(*p.schedule);
          j["initial"] = p.initial;
          if (p.n_records) j["n_records"] = *p.n_records;
        } else if constexpr (std::is_same_v<T, TrimerParams>) {
          j["schedule"] = schedule_to_json(p.schedule);
          j["bell_signs"] = p.bell_signs;
          if (p.records_per_cycle) j["records_per_cycle"] = *p.records_per_cycle;
        } else if constexpr (std::is_same_v<T, CouplingsParams>) {
          j["scheme"] = p.scheme;
          j["a"] = p.a;
          j["b"] = p.b;
          j["alpha_1"] = range_to_json(p.alpha_1);
          j["alpha_2"] = range_to_json(p.alpha_2);
          if (p.n_max) j["n_max"] = *p.n_max;
        } else if constexpr (std::is_same_v<T, FluxParams>) {
          if (!p.circuit.empty()) {
            json c = json::object();
            for (const auto& [k, val] : p.circuit) {
              if (flux_integer_key(k)) c[k] = static_cast<long long>(val);
              else c[k] = val;
            }
            j["circuit"] = c;
          }
          j["f_alpha"] = p.f_alpha;
          j["f_eps_range"] = json::array({p.f_eps_range.first, p.f_eps_range.second});
          j["sweep_points"] = p.sweep_points;
          j["levels"] = p.levels;
          if (p.gap_sweep) j["gap_sweep"] = range_to_json(*p.gap_sweep);
        }
      },
      cfg.params);
  return j;
}

}  // namespace topochain
