// topochain command-line front end.
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <thread>

#include <CLI11.hpp>

#include "topochain/config.hpp"
#include "topochain/errors.hpp"
#include "topochain/presets.hpp"
#include "topochain/runner.hpp"

namespace tc = topochain;

namespace {

struct Common {
  std::string config;
  std::string out = ".";
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> threads;
  bool amplitudes = false;
};

struct FluxFlags {
  std::optional<double> f_alpha;
  std::vector<double> f_eps_range;
  std::optional<std::size_t> levels;
  std::optional<std::size_t> sweep_points;
};

void add_common(CLI::App* sub, Common& c, bool config_required) {
  auto* opt = sub->add_option("--config", c.config, "experiment config (JSON)");
  if (config_required) opt->required();
  opt->check(CLI::ExistingFile);
  sub->add_option("--out", c.out, "output directory")->capture_default_str();
  sub->add_option("--seed", c.seed, "disorder seed, replaces the config value");
  sub->add_option("--threads", c.threads, "worker threads (fallback: TOPOCHAIN_THREADS)")
      ->check(CLI::PositiveNumber);
  sub->add_flag("--amplitudes", c.amplitudes, "add re_j, im_j columns to trajectory CSVs");
}

unsigned resolve_threads(const Common& c) {
  if (c.threads) return *c.threads;
  if (const char* env = std::getenv("TOPOCHAIN_THREADS")) {
    char* end = nullptr;
    const unsigned long n = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && n > 0) return static_cast<unsigned>(n);
    throw tc::InvalidParameter(std::string("TOPOCHAIN_THREADS must be a positive integer, got '") + env + "'");
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

tc::json load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw tc::Error("cannot read " + path);
  const std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  try {
    return tc::json::parse(text);
  } catch (const tc::json::parse_error& e) {
    throw tc::SchemaError({path + ": malformed JSON: " + e.what()});
  }
}

tc::RunOptions options(const Common& c) {
  tc::RunOptions o;
  o.out_dir = c.out;
  o.threads = resolve_threads(c);
  o.amplitudes = c.amplitudes;
  o.seed = c.seed;
  return o;
}

void print(const tc::RunReport& r) {
  for (const auto& f : r.files) std::cout << f.path.string() << "  " << f.sha256 << "\n";
  std::cout << r.manifest.string() << "\n";
  if (!r.summary.empty()) std::cout << "summary: " << r.summary.dump() << "\n";
}

void run_doc(const tc::json& doc, const Common& c) {
  print(tc::run(tc::parse_config(doc), options(c)));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Edge-state storage and adiabatic transfer in qubit chains"};
  app.set_version_flag("--version", std::string(tc::kToolVersion));
  app.require_subcommand(1);

  std::string help_tail = "\nconfig commands:";
  for (const auto& name : tc::command_names()) help_tail += " " + name;
  app.footer(help_tail + "\nfigure ids:" + [] {
    std::string s;
    for (const auto& id : tc::preset_ids()) s += " " + id;
    return s;
  }());

  Common common;
  FluxFlags flux;
  std::map<std::string, CLI::App*> command_subs;
  for (const auto& name : tc::command_names()) {
    auto* sub = app.add_subcommand(name, "run a '" + name + "' config");
    add_common(sub, common, name != "fluxqubit");
    command_subs[name] = sub;
  }
  auto* fq = command_subs["fluxqubit"];
  fq->add_option("--f-alpha", flux.f_alpha, "alpha-loop frustration");
  fq->add_option("--f-eps-range", flux.f_eps_range, "bias sweep LOW HIGH")->expected(2);
  fq->add_option("--levels", flux.levels, "levels per row")->check(CLI::PositiveNumber);
  fq->add_option("--sweep-points", flux.sweep_points, "bias points")->check(CLI::PositiveNumber);

  auto* run_sub = app.add_subcommand("run", "run any config, dispatching on its command field");
  add_common(run_sub, common, true);

  std::string figure;
  auto* rep = app.add_subcommand("reproduce", "run the bundled configs of a figure");
  rep->add_option("id", figure, "figure id")->required();
  rep->add_option("--out", common.out, "output directory")->capture_default_str();
  rep->add_option("--threads", common.threads, "worker threads (fallback: TOPOCHAIN_THREADS)")
      ->check(CLI::PositiveNumber);
  rep->add_flag("--amplitudes", common.amplitudes, "add re_j, im_j columns to trajectory CSVs");

  CLI11_PARSE(app, argc, argv);

  try {
    if (rep->parsed()) {
      for (const auto& r : tc::reproduce(figure, options(common))) print(r);
      return 0;
    }
    if (run_sub->parsed()) {
      run_doc(load(common.config), common);
      return 0;
    }
    for (const auto& [name, sub] : command_subs) {
      if (!sub->parsed()) continue;
      tc::json doc;
      if (!common.config.empty()) {
        doc = load(common.config);
      } else {
        doc = {{"schema", tc::kSchemaVersion}, {"command", name}, {"f_alpha", 0.2}, {"f_eps_range", {-0.05, 0.05}}};
      }
      if (doc.is_object() && doc.contains("command") && doc["command"] != name)
        throw tc::SchemaError({"config command " + doc["command"].dump() + " does not match subcommand '" + name + "'"});
      if (name == "fluxqubit" && doc.is_object()) {
        if (flux.f_alpha) doc["f_alpha"] = *flux.f_alpha;
        if (!flux.f_eps_range.empty()) doc["f_eps_range"] = flux.f_eps_range;
        if (flux.levels) doc["levels"] = *flux.levels;
        if (flux.sweep_points) doc["sweep_points"] = *flux.sweep_points;
      }
      run_doc(doc, common);
      return 0;
    }
  } catch (const tc::SchemaError& e) {
    std::cerr << "error: invalid config\n";
    for (const auto& v : e.violations()) std::cerr << "  " << v << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
