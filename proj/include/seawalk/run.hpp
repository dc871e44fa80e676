#pragma once

#include <chrono>
#include <filesystem>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "seawalk/config.hpp"
#include "seawalk/csv.hpp"
#include "seawalk/graph.hpp"
#include "seawalk/hamiltonian.hpp"
#include "seawalk/integrator.hpp"
#include "seawalk/observables.hpp"
#include "seawalk/state.hpp"

namespace seawalk {

struct RunResult {
  std::vector<ObservableRow> rows;
  StepDiagnostics worst;
  SeaDiagnostics sea;
  std::vector<std::string> files;
  double wall_seconds = 0.0;
  bool ok = false;
  std::string error;
};

namespace detail {

inline nlohmann::json diagnostics_json(const RunResult& r) {
  nlohmann::json d;
  d["samples"] = r.rows.size();
  d["max_trace_error"] = r.worst.trace_error;
  d["max_hermiticity_error"] = r.worst.hermiticity_error;
  d["max_leakage"] = r.worst.leakage;
  d["min_eigenvalue"] = r.worst.min_eigenvalue;
  d["max_energy_drift"] = r.worst.energy_drift;
  d["gram_degenerate_count"] = r.sea.gram_degenerate;
  d["repair_degenerate_count"] = r.sea.repair_degenerate;
  return d;
}

inline void write_manifest(const std::filesystem::path& dir,
                           const SimulationConfig& cfg, const RunResult& r) {
  nlohmann::json m;
  m["config"] = config_to_json(cfg);
  m["version"] = kVersion;
  m["wall_seconds"] = r.wall_seconds;
  m["status"] = r.ok ? "ok" : "aborted";
  if (!r.ok) m["error"] = r.error;
  m["diagnostics"] = diagnostics_json(r);
  m["files"] = r.files;
  std::ofstream out(dir / "manifest.json", std::ios::binary);
  out << m.dump(2) << '\n';
}

}  // namespace detail

/// Execute one configured trajectory and write observables.csv, JPD
/// snapshots at t = 0 and t_max (plus any configured extra times) and
/// manifest.json into out_dir.  On integrator abort the partial outputs are
/// written and flagged in the manifest before the exception is rethrown.
inline RunResult run(const SimulationConfig& cfg, const std::string& out_dir) {
  namespace fs = std::filesystem;
  const auto t_start = std::chrono::steady_clock::now();
  fs::create_directories(out_dir);
  const fs::path dir(out_dir);

  const RingGraph g = ring_graph(cfg.n_sites);
  const Matrix pa = antisym_projector(cfg.n_sites);
  const Matrix h_total = total_hamiltonian(cfg.interaction_params(), g);
  const Matrix h_a = project_antisym(h_total, pa);
  const Matrix rho0 = perturbed_initial_state(cfg.initial_state_spec(), cfg.n_sites);

  RunResult result;
  std::vector<std::pair<std::string, JpdSnapshot>> snapshots;
  const double snap_eps = cfg.dt / 2.0;
  const SampleHook hook = [&](double t, const Matrix& rho, const ObservableRow& row) {
    result.rows.push_back(row);
    if (t == 0.0) {
      snapshots.emplace_back("jpd_t0.csv", joint_probability(rho, row.t_over_tau));
    } else if (std::abs(t - cfg.t_max) <= snap_eps) {
      snapshots.emplace_back("jpd_tfinal.csv", joint_probability(rho, row.t_over_tau));
    }
    for (double ts : cfg.snapshot_times) {
      if (ts != 0.0 && std::abs(t - ts) <= snap_eps &&
          std::abs(ts - cfg.t_max) > snap_eps) {
        snapshots.emplace_back("jpd_t" + format_double(ts) + ".csv",
                               joint_probability(rho, row.t_over_tau));
      }
    }
  };

  const auto finish = [&](bool ok, const std::string& err) {
    result.ok = ok;
    result.error = err;
    write_observables_csv((dir / "observables.csv").string(), result.rows);
    result.files.push_back("observables.csv");
    for (const auto& [name, snap] : snapshots) {
      write_jpd_csv((dir / name).string(), snap);
      result.files.push_back(name);
    }
    result.files.push_back("manifest.json");
    result.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    detail::write_manifest(dir, cfg, result);
  };

  try {
    TrajectoryRecord rec = evolve(rho0, cfg.evolution, h_a, pa, cfg.sea_params(),
                                  cfg.integrator_config(), hook);
    // t_max = 0 means the initial sample is also the final snapshot.
    if (cfg.t_max == 0.0 && !result.rows.empty())
      snapshots.emplace_back("jpd_tfinal.csv",
                             joint_probability(rec.final_state, 0.0));
    result.rows = rec.rows;
    result.worst = rec.worst;
    result.sea = rec.sea;
    finish(true, {});
  } catch (const NumericalAbort& e) {
    finish(false, e.what());
    throw;
  }
  return result;
}

/// One sweep cell: regime / strength / evolution over the base config.
struct SweepCell {
  RegimeKind regime;
  double strength;
  EvolutionKind evolution;
  std::string dir_name;
  bool ok = false;
  std::string error;
  double msd_late = 0.0;
  double loschmidt_late = 0.0;
  double entropy_late = 0.0;
  double mutual_info_late = 0.0;
};

namespace detail {

inline double late_value(std::vector<double> series, int window) {
  if (series.empty()) return 0.0;
  return moving_average(series, window).back();
}

inline void run_cell(const SimulationConfig& base, const std::string& out_root,
                     SweepCell& cell) {
  SimulationConfig cfg = base;
  cfg.regime.kind = cell.regime;
  cfg.regime.strength = cell.strength;
  cfg.evolution = cell.evolution;
  try {
    detail::validate(cfg);
    const RunResult r = run(cfg, (std::filesystem::path(out_root) / cell.dir_name).string());
    std::vector<double> msd_s, losch, ent, mi;
    for (const auto& row : r.rows) {
      msd_s.push_back(row.msd);
      losch.push_back(row.loschmidt);
      ent.push_back(row.entropy_total);
      mi.push_back(row.mutual_info);
    }
    cell.msd_late = late_value(msd_s, cfg.ma_window);
    cell.loschmidt_late = late_value(losch, cfg.ma_window);
    cell.entropy_late = late_value(ent, cfg.ma_window);
    cell.mutual_info_late = late_value(mi, cfg.ma_window);
    cell.ok = true;
  } catch (const std::exception& e) {
    cell.ok = false;
    cell.error = e.what();
  }
}

}  // namespace detail

/// Cartesian sweep over regimes x strengths x evolutions.  Cells run
/// independently (optionally across threads); a failing cell is recorded in
/// the summary and the sweep continues.  Outputs one directory per cell,
/// named <regime>_<strength>_<evolution>, plus summary.csv with the
/// late-time moving-averaged observables.
inline std::vector<SweepCell> sweep(const std::vector<RegimeKind>& regimes,
                                    const std::vector<double>& strengths,
                                    const std::vector<EvolutionKind>& evolutions,
                                    const SimulationConfig& base,
                                    const std::string& out_root,
                                    unsigned jobs = 0) {
  if (regimes.empty() || strengths.empty() || evolutions.empty())
    throw ConfigError("sweep: regimes, strengths and evolutions must be non-empty");
  namespace fs = std::filesystem;
  fs::create_directories(out_root);

  std::vector<SweepCell> cells;
  for (RegimeKind r : regimes)
    for (double s : strengths)
      for (EvolutionKind e : evolutions) {
        SweepCell c;
        c.regime = r;
        c.strength = s;
        c.evolution = e;
        c.dir_name = to_string(r) + "_" + format_double(s) + "_" + to_string(e);
        cells.push_back(c);
      }

  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  jobs = std::min<unsigned>(jobs, cells.size());
  if (jobs <= 1) {
    for (auto& c : cells) detail::run_cell(base, out_root, c);
  } else {
    std::mutex m;
    size_t next = 0;
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < jobs; ++w) {
      pool.emplace_back([&] {
        for (;;) {
          size_t i;
          {
            std::lock_guard<std::mutex> lock(m);
            if (next >= cells.size()) return;
            i = next++;
          }
          detail::run_cell(base, out_root, cells[i]);
        }
      });
    }
    for (auto& t : pool) t.join();
  }

  std::ofstream out(fs::path(out_root) / "summary.csv", std::ios::binary);
  out << "regime,strength,evolution,msd_late,loschmidt_late,entropy_late,"
         "mutual_info_late,status\n";
  for (const auto& c : cells) {
    out << to_string(c.regime) << ',' << format_double(c.strength) << ','
        << to_string(c.evolution) << ',' << format_double(c.msd_late) << ','
        << format_double(c.loschmidt_late) << ',' << format_double(c.entropy_late)
        << ',' << format_double(c.mutual_info_late) << ','
        << (c.ok ? "ok" : "failed") << '\n';
  }
  return cells;
}

}  // namespace seawalk
