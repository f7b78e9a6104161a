#include "topochain/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iterator>
#include <sstream>

#include <openssl/evp.h>

#include "parallel.hpp"
#include "topochain/couplings.hpp"
#include "topochain/csv.hpp"
#include "topochain/disorder.hpp"
#include "topochain/effective.hpp"
#include "topochain/errors.hpp"
#include "topochain/fluxcircuit.hpp"
#include "topochain/presets.hpp"
#include "topochain/spectra.hpp"

namespace topochain {

namespace {

Artifact artifact(std::string name, const CsvTable& table) {
  return {std::move(name), table.text(), table.rows()};
}

std::size_t record_count(const Schedule& s, std::optional<std::size_t> per_cycle) {
  return per_cycle.value_or(200) * static_cast<std::size_t>(s.cycles) + 1;
}

ComputeResult run_spectrum(const ExperimentConfig& cfg, const SpectrumParams& p, const RunOptions& opt) {
  ComputeResult out;
  const std::string stem = cfg.output_stem();
  if (p.schedule) {
    const auto& s = *p.schedule;
    const auto trace = instantaneous_spectrum(s.schedule, s.kind, s.cells, p.n_times.value_or(201), opt.threads);
    out.files.push_back(artifact(stem + ".csv", spectrum_trace_csv(trace, "t")));
    out.summary["sites"] = s.cells * cell_size(s.kind);
    return out;
  }
  const ModelSpec& model = *p.model;
  const std::size_t window = model.kind == ModelKind::aah ? 2 : edge_window(model.kind);
  if (p.sweep) {
    const auto& sw = *p.sweep;
    std::vector<double> coords(sw.range.points);
    std::vector<ChainHamiltonian> chains;
    for (std::size_t k = 0; k < coords.size(); ++k) {
      coords[k] = sw.range.at(k);
      chains.push_back(model.with(sw.param, coords[k]).build());
    }
    const auto trace = spectrum_sweep(coords, chains, window, opt.threads);
    out.files.push_back(artifact(stem + ".csv", spectrum_trace_csv(trace, sw.param)));
    for (std::size_t k = 0; k < sw.eigenvectors_at.size(); ++k) {
      const auto sp = eigendecompose(model.with(sw.param, sw.eigenvectors_at[k]).build());
      out.files.push_back(artifact(stem + "_vectors_" + std::to_string(k + 1) + ".csv",
                                   spectrum_csv(sp, window, true)));
    }
    out.summary["points"] = coords.size();
    return out;
  }
  const auto sp = eigendecompose(model.build());
  out.files.push_back(artifact(stem + ".csv", spectrum_csv(sp, window, p.eigenvectors.value_or(false))));
  double min_abs = INFINITY;
  for (double e : sp.eigenvalues) min_abs = std::min(min_abs, std::abs(e));
  out.summary["min_abs_energy"] = min_abs;
  return out;
}

// Fidelity to `initial` and `target` at the end of each cycle.
CsvTable cycle_table(const Trajectory& traj, std::size_t per_cycle, int cycles,
                     const StateVector& initial, const StateVector& target, json& summary) {
  CsvTable table({"cycle", "t", "fidelity_initial", "fidelity_target"});
  json list = json::array();
  for (int k = 0; k <= cycles; ++k) {
    const std::size_t r = static_cast<std::size_t>(k) * per_cycle;
    const double fi = transfer_fidelity(traj.states[r], initial);
    const double ft = transfer_fidelity(traj.states[r], target);
    table.add_row({static_cast<double>(k), traj.times[r], fi, ft});
    list.push_back(json{{"cycle", k}, {"fidelity_initial", fi}, {"fidelity_target", ft}});
  }
  summary["cycles"] = list;
  return table;
}

ComputeResult run_pump(const ExperimentConfig& cfg, const PumpParams& p, const RunOptions& opt) {
  ComputeResult out;
  const auto& s = p.schedule;
  const std::size_t n = s.cells * cell_size(s.kind);
  const StateVector psi0 = p.initial.build(n);
  const StateVector target = p.target ? p.target->build(n) : StateVector::basis(n, n);
  const std::size_t per_cycle = p.records_per_cycle.value_or(200);
  const auto traj = pump(s.schedule, s.kind, s.cells, psi0, cfg.integrator_config(), record_count(s.schedule, per_cycle));
  const std::string stem = cfg.output_stem();
  out.files.push_back(artifact(stem + ".csv", trajectory_csv(traj, opt.amplitudes)));
  out.files.push_back(artifact(stem + "_cycles.csv", cycle_table(traj, per_cycle, s.schedule.cycles, psi0, target, out.summary)));
  return out;
}

ComputeResult run_quench(const ExperimentConfig& cfg, const QuenchParams& p, const RunOptions& opt) {
  ComputeResult out;
  ChainHamiltonian h = p.model.build();
  const std::uint64_t seed = opt.seed ? *opt.seed : cfg.seed.value_or(0);
  if (p.disorder) {
    DisorderSpec d;
    d.sigma = p.disorder->sigma;
    d.seed = seed;
    d.diagonal = std::find(p.disorder->targets.begin(), p.disorder->targets.end(), "diagonal") != p.disorder->targets.end();
    d.offdiagonal = std::find(p.disorder->targets.begin(), p.disorder->targets.end(), "offdiagonal") != p.disorder->targets.end();
    h = apply_disorder(h, d);
  }
  const auto traj = quench(h, p.flip_site, p.t_end, cfg.integrator_config(), p.n_records.value_or(201));
  out.files.push_back(artifact(cfg.output_stem() + ".csv", trajectory_csv(traj, opt.amplitudes)));
  double min_sz = INFINITY;
  for (const auto& row : traj.sz) min_sz = std::min(min_sz, row[p.flip_site - 1]);
  out.summary["seed"] = seed;
  out.summary["min_sz_flip_site"] = min_sz;
  out.summary["final_sz_flip_site"] = traj.sz.back()[p.flip_site - 1];
  return out;
}

ComputeResult run_lz(const ExperimentConfig& cfg, const LzParams& p, const RunOptions& opt) {
  ComputeResult out;
  LZPath path;
  if (p.path == "A") path = path_a(*p.alpha, *p.T);
  else if (p.path == "B") path = path_b(*p.alpha, *p.T);
  else if (p.path == "C") path = path_c(*p.alpha, *p.T, *p.theta);
  else path = path_from_schedule(p.schedule->schedule, p.schedule->kind, p.schedule->cells);

  const std::size_t n_records = p.n_records.value_or(201);
  const auto samples = path.sample(n_records);
  CsvTable path_table({"t", "u", "g", "E_minus", "E_plus"});
  for (const auto& s : samples) {
    const auto [lo, hi] = lz_eigen(TwoLevelSystem{s.u, s.g, 0.0});
    path_table.add_row({s.t, s.u, s.g, lo, hi});
  }
  const StateVector psi0 = StateVector::basis(2, p.initial == "L" ? 1 : 2);
  const auto traj = lz_evolve(path, psi0, cfg.integrator_config(), n_records);
  const std::string stem = cfg.output_stem();
  out.files.push_back(artifact(stem + ".csv", trajectory_csv(traj, opt.amplitudes)));
  out.files.push_back(artifact(stem + "_path.csv", path_table));
  const auto& last = traj.states.back();
  out.summary["path_class"] = std::string(to_string(classify_path(samples)));
  out.summary["final_P_L"] = std::norm(last[0]);
  out.summary["final_P_R"] = std::norm(last[1]);
  return out;
}

ComputeResult run_trimer(const ExperimentConfig& cfg, const TrimerParams& p, const RunOptions& opt) {
  ComputeResult out;
  const auto& s = p.schedule;
  const std::size_t n = s.cells * cell_size(s.kind);
  const std::size_t per_cycle = p.records_per_cycle.value_or(200);
  const std::size_t records = record_count(s.schedule, per_cycle);
  const IntegratorConfig icfg = cfg.integrator_config();
  std::vector<Trajectory> runs(p.bell_signs.size());
  std::vector<StateVector> left, right;
  for (const auto& sign : p.bell_signs) {
    const double w = sign == "+" ? 1.0 : -1.0;
    const std::vector<cplx> weights{1.0, w};
    const std::vector<std::size_t> l{1, 2}, r{n - 1, n};
    left.push_back(StateVector::superposition(n, l, weights));
    right.push_back(StateVector::superposition(n, r, weights));
  }
  detail::parallel_for(runs.size(), opt.threads, [&](std::size_t i) {
    runs[i] = pump(s.schedule, s.kind, s.cells, left[i], icfg, records);
  });
  const std::string stem = cfg.output_stem();
  for (std::size_t i = 0; i < runs.size(); ++i) {
    const std::string tag = p.bell_signs[i] == "+" ? "plus" : "minus";
    out.files.push_back(artifact(stem + "_" + tag + ".csv", trajectory_csv(runs[i], opt.amplitudes)));
    json sub;
    out.files.push_back(artifact(stem + "_" + tag + "_cycles.csv",
                                 cycle_table(runs[i], per_cycle, s.schedule.cycles, left[i], right[i], sub)));
    out.summary[tag] = sub;
  }
  return out;
}

ComputeResult run_couplings(const ExperimentConfig& cfg, const CouplingsParams& p, const RunOptions&) {
  ComputeResult out;
  CsvTable table({"alpha_1", "alpha_2", "P_re", "P_im", "Q_re", "Q_im"});
  const bool matched = p.scheme == "matched";
  for (std::size_t i = 0; i < p.alpha_1.points; ++i) {
    for (std::size_t k = 0; k < p.alpha_2.points; ++k) {
      const double x1 = p.alpha_1.at(i), x2 = p.alpha_2.at(k);
      const auto P = matched ? effective_coupling_matched(p.a, x1, x2, BondParity::p)
                             : effective_coupling_identical(p.a, x1, x2, p.n_max.value_or(40));
      const auto Q = matched ? effective_coupling_matched(p.b, x1, x2, BondParity::q)
                             : effective_coupling_identical(p.b, x1, x2, p.n_max.value_or(40));
      table.add_row({x1, x2, P.value.real(), P.value.imag(), Q.value.real(), Q.value.imag()});
    }
  }
  out.files.push_back(artifact(cfg.output_stem() + ".csv", table));
  return out;
}

ComputeResult run_flux(const ExperimentConfig& cfg, const FluxParams& p, const RunOptions& opt) {
  ComputeResult out;
  const FluxQubitSpec spec = p.spec();
  const Range eps{p.f_eps_range.first, p.f_eps_range.second, p.sweep_points};
  std::vector<std::vector<double>> rows(p.sweep_points);
  detail::parallel_for(rows.size(), opt.threads, [&](std::size_t k) {
    const double f = eps.at(k);
    const auto pt = flux_point(spec, p.f_alpha, f, p.levels);
    std::vector<double> row{f};
    row.insert(row.end(), pt.levels.begin(), pt.levels.end());
    row.push_back(pt.character.g_perp);
    row.push_back(pt.character.g_par);
    rows[k] = std::move(row);
  });
  std::vector<std::string> header{"f_eps"};
  for (std::size_t j = 0; j < p.levels; ++j) header.push_back("E_" + std::to_string(j));
  header.push_back("g_perp");
  header.push_back("g_par");
  CsvTable table(header);
  for (const auto& r : rows) table.add_row(r);
  const std::string stem = cfg.output_stem();
  out.files.push_back(artifact(stem + ".csv", table));

  if (p.gap_sweep) {
    std::vector<double> gaps(p.gap_sweep->points);
    detail::parallel_for(gaps.size(), opt.threads,
                         [&](std::size_t k) { gaps[k] = qubit_gap(spec, p.gap_sweep->at(k)); });
    CsvTable gap_table({"f_alpha", "gap"});
    for (std::size_t k = 0; k < gaps.size(); ++k) gap_table.add_row({p.gap_sweep->at(k), gaps[k]});
    out.files.push_back(artifact(stem + "_gap.csv", gap_table));
  }
  const auto [i0, i1] = persistent_currents(spec, p.f_alpha, 0.0);
  out.summary["I0_at_zero_bias"] = i0;
  out.summary["I1_at_zero_bias"] = i1;
  return out;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read back " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  out.close();
  if (!out) throw Error("write failed for " + path.string());
}

}  // namespace

std::string sha256_hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw Error("sha256 failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 15];
  }
  return out;
}

ComputeResult compute(const ExperimentConfig& cfg, const RunOptions& opt) {
  try {
    return std::visit(
        [&](const auto& p) -> ComputeResult {
          using T = std::decay_t<decltype(p)>;
          if constexpr (std::is_same_v<T, SpectrumParams>) return run_spectrum(cfg, p, opt);
          else if constexpr (std::is_same_v<T, PumpParams>) return run_pump(cfg, p, opt);
          else if constexpr (std::is_same_v<T, QuenchParams>) return run_quench(cfg, p, opt);
          else if constexpr (std::is_same_v<T, LzParams>) return run_lz(cfg, p, opt);
          else if constexpr (std::is_same_v<T, TrimerParams>) return run_trimer(cfg, p, opt);
          else if constexpr (std::is_same_v<T, CouplingsParams>) return run_couplings(cfg, p, opt);
          else return run_flux(cfg, p, opt);
        },
        cfg.params);
  } catch (const SchemaError&) {
    throw;
  } catch (const std::exception& e) {
    throw Error(std::string(to_string(cfg.command)) + ": " + e.what());
  }
}

RunReport run(const ExperimentConfig& cfg, const RunOptions& opt) {
  const auto start = std::chrono::steady_clock::now();
  ComputeResult result = compute(cfg, opt);

  std::error_code ec;
  std::filesystem::create_directories(opt.out_dir, ec);
  if (ec) throw Error(std::string(to_string(cfg.command)) + ": cannot create " + opt.out_dir.string());

  RunReport report;
  json outputs = json::array();
  for (const auto& f : result.files) {
    WrittenFile w{opt.out_dir / f.name, sha256_hex(f.text), f.text.size(), f.rows};
    write_file(w.path, f.text);
    if (sha256_hex(read_file(w.path)) != w.sha256)
      throw Error(std::string(to_string(cfg.command)) + ": checksum mismatch after writing " + w.path.string());
    outputs.push_back(json{{"file", f.name}, {"sha256", w.sha256}, {"bytes", w.bytes}, {"rows", w.rows}});
    report.files.push_back(std::move(w));
  }
  report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  report.summary = result.summary;

  json echo = to_json(cfg);
  if (opt.seed) echo["seed"] = *opt.seed;
  json manifest{{"tool", "topochain"},
                {"version", std::string(kToolVersion)},
                {"config", echo},
                {"outputs", outputs},
                {"summary", result.summary},
                {"threads", opt.threads},
                {"amplitudes", opt.amplitudes},
                {"wall_seconds", report.wall_seconds}};
  report.manifest = opt.out_dir / (cfg.output_stem() + ".manifest.json");
  const std::string text = manifest.dump(2) + "\n";
  write_file(report.manifest, text);
  if (read_file(report.manifest) != text)
    throw Error(std::string(to_string(cfg.command)) + ": manifest did not read back intact");
  return report;
}

std::vector<RunReport> reproduce(const std::string& id, const RunOptions& opt) {
  std::vector<RunReport> out;
  for (const auto& doc : preset_configs(id)) out.push_back(run(parse_config(doc), opt));
  return out;
}

}  // namespace topochain
