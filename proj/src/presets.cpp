#include "topochain/presets.hpp"

#include <numbers>

#include "topochain/errors.hpp"

namespace topochain {

namespace {

json head(const char* command, const char* output) {
  return json{{"schema", kSchemaVersion}, {"command", command}, {"output", output}};
}

json schedule(ModelKind kind, std::size_t cells, const Schedule& s) {
  return schedule_to_json(ScheduleSpec{kind, cells, s});
}

ParamTerm constant(double value) { return {TermForm::constant, 0.0, value, 1.0, 0.0}; }

json spectrum_of(const char* output, ModelKind kind, std::size_t cells, const Schedule& s) {
  json j = head("spectrum", output);
  j["schedule"] = schedule(kind, cells, s);
  j["n_times"] = 201;
  return j;
}

json pump_of(const char* output, const Schedule& s, std::size_t cells, std::size_t target) {
  json j = head("pump", output);
  j["schedule"] = schedule(ModelKind::rice_mele, cells, s);
  j["initial"] = json{{"sites", {1}}};
  j["target"] = json{{"sites", {target}}};
  j["records_per_cycle"] = 200;
  return j;
}

json lz_of(const char* output, const char* path, std::optional<double> theta) {
  json j = head("lz", output);
  j["path"] = path;
  j["alpha"] = 1.0;
  j["T"] = 200.0;
  if (theta) j["theta"] = *theta;
  j["initial"] = "L";
  j["n_records"] = 401;
  return j;
}

json quench_of(const char* output, double a, double sigma) {
  json j = head("quench", output);
  j["seed"] = 42;
  j["kind"] = "ssh";
  j["L"] = 7;
  j["a"] = a;
  j["b"] = 1.0;
  j["flip_site"] = 1;
  j["t_end"] = 100.0;
  j["n_records"] = 1001;
  j["disorder"] = json{{"sigma", sigma}, {"targets", {"diagonal", "offdiagonal"}}};
  return j;
}

json static_trimer(const char* output) {
  json j = head("spectrum", output);
  j["kind"] = "trimer";
  j["L"] = 8;
  for (const char* k : {"a", "b"}) j[k] = 1.0;
  j["c"] = 2.0;
  for (const char* k : {"u", "v", "w"}) j[k] = 0.0;
  j["eigenvectors"] = true;
  return j;
}

std::vector<json> build(const std::string& id) {
  const double pi = std::numbers::pi;
  if (id == "pumping") return {pump_of("pumping", standard_pump(100.0), 7, 14)};
  if (id == "rm") return {spectrum_of("rm_spectrum", ModelKind::rice_mele, 7, standard_pump(100.0))};
  if (id == "lz1")
    return {lz_of("lz1_path_a", "A", std::nullopt), lz_of("lz1_path_b", "B", std::nullopt),
            lz_of("lz1_path_c", "C", pi / 4)};
  if (id == "lz2") {
    json j = head("lz", "lz2");
    j["path"] = "schedule";
    j["schedule"] = schedule(ModelKind::rice_mele, 7, standard_pump(100.0));
    j["initial"] = "L";
    j["n_records"] = 401;
    return {j};
  }
  if (id == "optimization") {
    Schedule only_u = standard_pump(100.0);
    only_u.params[Param::u].amplitude = 0.25;
    json pump = pump_of("optimization_dynamics", optimized_pump(100.0, 3), 7, 14);
    return {spectrum_of("optimization_u_only", ModelKind::rice_mele, 7, only_u),
            spectrum_of("optimization_spectrum", ModelKind::rice_mele, 7, optimized_pump(100.0)),
            pump};
  }
  if (id == "trimer") {
    Schedule c_sweep;
    c_sweep.period = 100.0;
    c_sweep.params = {{Param::a, constant(1.0)},
                      {Param::b, constant(1.0)},
                      {Param::c, {TermForm::sine, 2.0, 0.0, 1.0, 0.0}},
                      {Param::u, constant(0.0)},
                      {Param::v, constant(0.0)},
                      {Param::w, constant(0.0)}};
    Schedule ab_sweep = c_sweep;
    ab_sweep.params[Param::a] = {TermForm::sine, 1.0, 0.0, 1.0, 0.0};
    ab_sweep.params[Param::b] = ab_sweep.params[Param::a];
    ab_sweep.params[Param::c] = constant(2.0);
    return {spectrum_of("trimer_c_sweep", ModelKind::trimer, 8, c_sweep),
            spectrum_of("trimer_ab_sweep", ModelKind::trimer, 8, ab_sweep)};
  }
  if (id == "ssh3edges") return {static_trimer("ssh3edges")};
  if (id == "belltransfer") {
    json j = head("trimer", "belltransfer");
    j["schedule"] = schedule(ModelKind::trimer, 7, trimer_bell_transfer(1000.0, 3));
    j["bell_signs"] = {"+", "-"};
    j["records_per_cycle"] = 200;
    return {j};
  }
  if (id == "energylevel") {
    json j = head("spectrum", "energylevel");
    j["kind"] = "ssh";
    j["L"] = 7;
    j["a"] = 0.0;
    j["b"] = 1.0;
    j["sweep"] = json{{"param", "a"}, {"from", 0.0}, {"to", 2.0}, {"points", 201},
                      {"eigenvectors_at", {0.1, 1.0}}};
    return {j};
  }
  // noise at 10% of the intracell coupling in both chains
  if (id == "trivial") return {quench_of("trivial_topological", 0.1, 0.01), quench_of("trivial_uniform", 1.0, 0.1)};
  if (id == "circuit") {
    json j = head("fluxqubit", "circuit");
    j["circuit"] = json{{"EJ", 1.0},  {"EJ_over_EC", 50.0}, {"alpha", 0.5}, {"beta", 0.05},
                        {"kappa", 50.0}, {"N", 1},           {"n", 1},       {"charge_cutoff", 15}};
    j["f_alpha"] = 0.2;
    j["f_eps_range"] = {-0.05, 0.05};
    j["sweep_points"] = 41;
    j["levels"] = 4;
    j["gap_sweep"] = json{{"from", 0.0}, {"to", 0.3}, {"points", 31}};
    return {j};
  }
  std::string known;
  for (const auto& k : preset_ids()) known += (known.empty() ? "" : ", ") + k;
  throw InvalidParameter("unknown figure id '" + id + "'; available: " + known);
}

}  // namespace

std::vector<std::string> preset_ids() {
  return {"pumping", "rm",          "lz1",          "lz2",     "optimization", "trimer",
          "ssh3edges", "belltransfer", "energylevel", "trivial", "circuit"};
}

std::vector<json> preset_configs(const std::string& id) { return build(id); }

}  // namespace topochain
