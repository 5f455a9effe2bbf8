#include "fdnls/runner.hpp"

#include <chrono>
#include <cmath>
#include <limits>

#include "fdnls/convergence.hpp"
#include "fdnls/dispersive.hpp"
#include "fdnls/errors.hpp"
#include "fdnls/fourier.hpp"
#include "fdnls/io.hpp"
#include "fdnls/mi.hpp"
#include "fdnls/oracles.hpp"
#include "fdnls/parallel.hpp"
#include "fdnls/spectral.hpp"

namespace fdnls {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

constexpr const char* kVersion = "1.0.0";

json record_json(const ConvergenceRecord& r) {
  return {{"fitted_rate", r.fitted_rate},
          {"fitted_coefficient", r.fitted_coefficient},
          {"r_squared", r.r_squared},
          {"expected_rate", r.expected_rate},
          {"degenerate", r.degenerate},
          {"preasymptotic", r.preasymptotic},
          {"monotone", r.monotone},
          {"reference_self_difference", r.reference_self_difference},
          {"notes", r.notes}};
}

void write_record_csv(const fs::path& path, const ConvergenceRecord& r) {
  CsvWriter csv(path, {"M", "h", "error"});
  for (std::size_t i = 0; i < r.errors.size(); ++i) {
    csv.cell(r.M_values[i]).cell(r.h_values[i]).cell(r.errors[i]).end_row();
  }
}

SweepOptions sweep_options(const RunConfig& cfg) {
  SweepOptions o;
  o.dt = cfg.dt;
  o.M_ref = cfg.M_ref;
  o.records = cfg.records;
  o.validate_reference = cfg.validate_reference;
  return o;
}

SolverConfig solver_for(const RunConfig& cfg, const Lattice& lat) {
  SolverConfig s;
  s.dt = cfg.dt > 0.0 ? cfg.dt : default_time_step(lat, cfg.params);
  s.t_end = cfg.t_end;
  if (s.t_end > 0.0) s.dt = std::min(s.dt, s.t_end);
  s.record_stride = cfg.record_stride;
  return s;
}

json run_simulate(const RunConfig& cfg, const fs::path& out) {
  const Lattice lat(cfg.M);
  const Field u0 = cfg.cw ? cfg.cw->initial_field(lat) : sample_datum(cfg.data, lat);
  const SolverConfig solver = solver_for(cfg, lat);
  NdjsonWriter traj(out / "trajectory.ndjson");
  CsvWriter log(out / "conservation.csv", {"t", "mass", "energy"});
  double m0 = 0, e0 = 0, m1 = 0, e1 = 0, sup = 0;
  bool first = true;
  RecordOptions ro{false, [&](const SnapshotView& s) {
                     json re = json::array(), im = json::array();
                     for (const auto& v : s.physical) {
                       re.push_back(v.real());
                       im.push_back(v.imag());
                       sup = std::max(sup, std::abs(v));
                     }
                     traj.write({{"t", s.time}, {"re", re}, {"im", im}});
                   }};
  const Trajectory run = evolve_nonlinear(u0, cfg.params, solver, ro);
  for (std::size_t i = 0; i < run.log.times.size(); ++i) {
    log.cell(run.log.times[i]).cell(run.log.mass[i]).cell(run.log.energy[i]).end_row();
    if (first) {
      m0 = run.log.mass[i];
      e0 = run.log.energy[i];
      first = false;
    }
    m1 = run.log.mass[i];
    e1 = run.log.energy[i];
  }
  return {{"steps", solver.steps()},
          {"dt", solver.effective_dt()},
          {"relative_mass_drift", std::abs(m1 - m0) / m0},
          {"energy_drift", std::abs(e1 - e0)},
          {"max_sup_norm", sup}};
}

double expected_converge_rate(const RunConfig& cfg) {
  if (const auto* r = std::get_if<RandomSobolevDatum>(&cfg.data)) {
    return 2.0 * std::min(r->s, cfg.params.alpha / 2.0) / (2.0 + cfg.params.alpha);
  }
  return 1.0;
}

json run_converge(const RunConfig& cfg, const fs::path& out) {
  if (!cfg.has_data || cfg.cw) throw ConfigError("converge needs a torus datum under \"data\"");
  ConvergenceRecord rec =
      run_continuum_limit(cfg.data, cfg.params, cfg.t_eval, cfg.M_list, sweep_options(cfg));
  rec.expected_rate = expected_converge_rate(cfg);
  write_record_csv(out / "convergence.csv", rec);
  json summary = record_json(rec);
  if (rec.degenerate) {
    summary["pass"] = true;
  } else if (std::holds_alternative<RandomSobolevDatum>(cfg.data)) {
    summary["pass"] = rec.fitted_rate >= rec.expected_rate - 0.05;
  } else {
    summary["pass"] = std::abs(rec.fitted_rate - rec.expected_rate) <= 0.03;
  }
  write_json(out / "summary.json", summary);
  return summary;
}

json run_sharpness(const RunConfig& cfg, const fs::path& out) {
  const SharpnessReport rep =
      run_sharpness_experiment(cfg.params, cfg.T, cfg.eps, cfg.M_list, sweep_options(cfg));
  CsvWriter csv(out / "sharpness.csv", {"M", "h", "k0", "datum_norm", "sup_error"});
  for (std::size_t i = 0; i < rep.record.errors.size(); ++i) {
    csv.cell(rep.record.M_values[i]).cell(rep.record.h_values[i]).cell(rep.k0_values[i])
        .cell(rep.datum_norms[i]).cell(rep.record.errors[i]).end_row();
  }
  json summary = record_json(rep.record);
  summary["rate_alpha_over_2_plus_alpha"] = rep.rate_interior;
  summary["rate_2_over_2_plus_alpha"] = rep.rate_competing;
  summary["distance_alpha_over_2_plus_alpha"] = rep.distance_interior;
  summary["distance_2_over_2_plus_alpha"] = rep.distance_competing;
  summary["pass"] = rep.distance_interior <= 0.07;
  write_json(out / "summary.json", summary);
  return summary;
}

json run_compact(const RunConfig& cfg, const fs::path& out) {
  if (!cfg.has_data || cfg.cw) {
    throw ConfigError("compact-support needs a finitely supported datum under \"data\"");
  }
  const CompactSupportReport rep = run_compact_support_experiment(
      cfg.data, cfg.params, cfg.T, cfg.M_list, sweep_options(cfg));
  write_record_csv(out / "compact_support.csv", rep.record);
  json summary = record_json(rep.record);
  summary["k_max"] = rep.k_max;
  summary["support_leak"] = rep.support_leak;
  summary["pass"] = rep.record.fitted_rate >= 0.95 && rep.record.fitted_rate <= 1.1;
  if (cfg.k_list.size() >= 2) {
    const KmaxSweep sweep = run_kmax_sweep(cfg.params, cfg.T, cfg.k_list, cfg.M_list, sweep_options(cfg));
    CsvWriter csv(out / "kmax_sweep.csv", {"k", "normalized_coefficient"});
    for (std::size_t i = 0; i < sweep.k_values.size(); ++i) {
      csv.cell(sweep.k_values[i]).cell(sweep.coefficients[i]).end_row();
    }
    summary["kmax_exponent"] = sweep.exponent;
    summary["kmax_expected_exponent"] = sweep.expected_exponent;
  }
  write_json(out / "summary.json", summary);
  return summary;
}

json run_mi_region(const RunConfig& cfg, const fs::path& out) {
  const Lattice lat(cfg.M);
  const RegionGrid& g = cfg.region;
  std::vector<double> xi(g.xi_points), ys(g.y_points);
  for (int i = 0; i < g.xi_points; ++i) xi[i] = static_cast<double>(cfg.M) * i / (g.xi_points - 1);
  for (int i = 0; i < g.y_points; ++i) ys[i] = g.y_min + (g.y_max - g.y_min) * i / (g.y_points - 1);
  CsvWriter csv(out / "mi_region.csv", {g.axis, "xi", "unstable"});
  long long unstable = 0;
  for (double y : ys) {
    ModelParams p = cfg.params;
    double A = g.A;
    if (g.axis == "alpha") p.alpha = y; else A = y;
    const auto mask = instability_mask(lat, p, xi, {A});
    for (std::size_t i = 0; i < xi.size(); ++i) {
      csv.cell(y).cell(xi[i]).cell(mask[0][i] ? 1 : 0).end_row();
      unstable += mask[0][i];
    }
  }
  return {{"grid_points", static_cast<long long>(xi.size() * ys.size())}, {"unstable_points", unstable}};
}

json run_mi_gain(const RunConfig& cfg, const fs::path& out) {
  const Lattice lat(cfg.M);
  const auto rows = sweep_max_gain(cfg.params, cfg.A_list, lat, cfg.perturbation);
  CsvWriter csv(out / "mi_gain.csv",
                {"A", "omega_theory", "omega_lattice", "k_m", "slope_measured", "status", "regime"});
  json table = json::array();
  for (const auto& r : rows) {
    const MIRegime regime = mi_dispersion(lat, cfg.params, r.A).regime;
    csv.cell(r.A).cell(r.omega_theory).cell(r.omega_lattice).cell(r.k_m).cell(r.slope_measured)
        .cell(std::string(to_string(r.status))).cell(std::string(to_string(regime))).end_row();
    table.push_back({{"A", r.A}, {"omega_theory", r.omega_theory}, {"slope_measured", r.slope_measured}});
  }
  return {{"rows", table}};
}

json run_mi_track(const RunConfig& cfg, const fs::path& out) {
  const Lattice lat(cfg.M);
  CWSpec cw;
  if (cfg.cw) {
    cw = *cfg.cw;
  } else {
    cw.A = 1.0;
    cw.eps = cfg.perturbation;
    for (int k : cfg.k_track.empty() ? std::vector<int>{1} : cfg.k_track) cw.modes.emplace_back(k, 1.0);
  }
  std::vector<int> track = cfg.k_track;
  if (track.empty()) {
    for (const auto& [k, ph] : cw.modes) track.push_back(k);
  }
  const SolverConfig solver = solver_for(cfg, lat);
  std::vector<double> sups;
  const auto growth = measure_sideband_growth(cw, cfg.params, lat, solver, track, &sups);
  const MIReport rep = mi_dispersion(lat, cfg.params, cw.A);
  CsvWriter series(out / "mi_track.csv", {"t", "k", "amplitude"});
  for (const auto& g : growth) {
    for (std::size_t i = 0; i < g.times.size(); ++i) {
      series.cell(g.times[i]).cell(g.k).cell(g.amplitudes[i]).end_row();
    }
  }
  CsvWriter sup_csv(out / "sup_norm.csv", {"t", "sup_norm"});
  const auto& times = growth.empty() ? std::vector<double>{} : growth.front().times;
  for (std::size_t i = 0; i < sups.size() && i < times.size(); ++i) {
    sup_csv.cell(times[i]).cell(sups[i]).end_row();
  }
  CsvWriter fit(out / "mi_growth.csv",
                {"k", "status", "slope", "gain_theory", "window_start", "window_end", "points"});
  json modes = json::array();
  for (const auto& g : growth) {
    const double G = rep.gain_at(g.k);
    fit.cell(g.k).cell(std::string(to_string(g.status))).cell(g.slope).cell(G)
        .cell(g.window_start).cell(g.window_end).cell(g.points).end_row();
    json m = {{"k", g.k}, {"status", to_string(g.status)}, {"slope", g.slope}, {"gain_theory", G}};
    if (g.status == GrowthStatus::Growing && G > 0.0) m["pass"] = std::abs(g.slope - G) <= 0.05 * G;
    modes.push_back(m);
  }
  json result = {{"modes", modes}};
  if (!times.empty()) {
    const RecurrenceReport rec = recurrence_diagnostic(times, sups, cw.A);
    result["recurrence"] = {{"localized", rec.localized},
                            {"first_localization_time", rec.first_localization_time},
                            {"recurrence_times", rec.recurrence_times},
                            {"irregularity_index", rec.irregularity_index}};
  }
  return result;
}

json run_kernel_probe(const RunConfig& cfg, const fs::path& out) {
  const double alpha = cfg.params.alpha;
  const auto table = dispersive_bound_check(alpha, cfg.M_list, TimeGrid{cfg.t_fractions, true}, cfg.N_list);
  CsvWriter csv(out / "kernel_probe.csv", {"alpha", "M", "N", "t", "kernel_sup", "ratio", "admitted"});
  for (const auto& e : table) {
    csv.cell(e.alpha).cell(e.M).cell(e.N).cell(e.t).cell(e.kernel_sup).cell(e.ratio)
        .cell(e.admitted ? 1 : 0).end_row();
  }
  const auto sups = sup_ratio_by_M(table, cfg.M_list);
  CsvWriter sup_csv(out / "kernel_sup.csv", {"M", "sup_ratio"});
  double worst_change = 0.0;
  for (std::size_t i = 0; i < sups.size(); ++i) {
    sup_csv.cell(cfg.M_list[i]).cell(sups[i]).end_row();
    if (i > 0) worst_change = std::max(worst_change, std::abs(sups[i] / sups[i - 1] - 1.0));
  }
  json result = {{"sup_ratio_by_M", sups}, {"max_relative_change", worst_change},
                 {"pass", worst_change < 0.5}};
  if (!cfg.wavepacket_M.empty()) {
    const WavepacketReport wp = blowup_wavepacket_demo(alpha, cfg.T, cfg.wavepacket_M);
    CsvWriter w(out / "wavepacket.csv", {"M", "h", "admitted", "tau", "ratio"});
    for (const auto& r : wp.rows) {
      w.cell(r.M).cell(r.h).cell(r.admitted ? 1 : 0).cell(r.tau).cell(r.ratio).end_row();
    }
    result["wavepacket"] = {{"slope", wp.slope}, {"expected_slope", wp.expected_slope},
                            {"pass", std::abs(wp.slope - wp.expected_slope) <= 0.15}};
  }
  return result;
}

json run_oracle_check(const RunConfig& cfg, const fs::path& out) {
  PlaneWaveSpec spec;
  if (const auto* pw = std::get_if<PlaneWaveDatum>(&cfg.data)) spec = pw->spec;
  const double t = cfg.t_end;
  const ErrorCoefficients c = predicted_error_coefficients(spec, cfg.params, t);
  struct Row {
    double h, discrete_error, torus_error;
  };
  const int M_ref = cfg.M_ref > 0 ? cfg.M_ref : 8 * cfg.M_list.back();
  const Lattice reference(M_ref);
  const ContinuumField exact = plane_wave_continuum(spec, cfg.params, t, reference);
  const auto rows = parallel_map(cfg.M_list, [&](int M) {
    const Lattice lat(M);
    SolverConfig solver = solver_for(cfg, lat);
    solver.record_stride = std::max(1, solver.steps());
    const Trajectory run = evolve_nonlinear(plane_wave_discrete(spec, cfg.params, lat, 0.0),
                                            cfg.params, solver, RecordOptions{false, {}});
    const Field target = plane_wave_discrete(spec, cfg.params, lat, t);
    // u_h(t) against d_h u(t), and p_h u_h(t) against u(t).
    const Field dh_exact = discretize_dh(plane_wave_continuum(spec, cfg.params, t, Lattice(8 * M)), lat);
    return Row{lat.h(), l2_norm_h(run.final_state - dh_exact),
               l2_torus_error(target, exact)};
  });
  CsvWriter csv(out / "oracle_check.csv",
                {"M", "h", "discrete_error", "discrete_error_over_h2", "torus_error", "torus_error_over_h"});
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    csv.cell(cfg.M_list[i]).cell(r.h).cell(r.discrete_error).cell(r.discrete_error / (r.h * r.h))
        .cell(r.torus_error).cell(r.torus_error / r.h).end_row();
  }
  return {{"c_continuum", c.c_continuum}, {"c_discrete", c.c_discrete}};
}

}  // namespace

json execute_experiment(const RunConfig& cfg, const fs::path& out) {
  switch (cfg.experiment) {
    case Experiment::Simulate: return run_simulate(cfg, out);
    case Experiment::Converge: return run_converge(cfg, out);
    case Experiment::Sharpness: return run_sharpness(cfg, out);
    case Experiment::CompactSupport: return run_compact(cfg, out);
    case Experiment::MiRegion: return run_mi_region(cfg, out);
    case Experiment::MiGain: return run_mi_gain(cfg, out);
    case Experiment::MiTrack: return run_mi_track(cfg, out);
    case Experiment::KernelProbe: return run_kernel_probe(cfg, out);
    case Experiment::OracleCheck: return run_oracle_check(cfg, out);
  }
  throw ConfigError("unhandled experiment");
}

namespace {

const char* error_kind(const std::exception& e) {
  if (dynamic_cast<const BlowUpError*>(&e)) return "BlowUpError";
  if (dynamic_cast<const ReferenceError*>(&e)) return "ReferenceError";
  if (dynamic_cast<const ConfigError*>(&e)) return "ConfigError";
  if (dynamic_cast<const ResolutionError*>(&e)) return "ResolutionError";
  if (dynamic_cast<const AliasingError*>(&e)) return "AliasingError";
  if (dynamic_cast<const DomainError*>(&e)) return "DomainError";
  if (dynamic_cast<const ContractError*>(&e)) return "ContractError";
  if (dynamic_cast<const Error*>(&e)) return "Error";
  return "InternalError";
}

}  // namespace

int run_experiment(const RunConfig& cfg) {
  const fs::path out(cfg.out_dir);
  const auto start = std::chrono::steady_clock::now();
  json manifest = {{"tool", "fdnls"},
                   {"version", kVersion},
                   {"config", to_json(cfg)},
                   {"seeds", {{"config", cfg.seed}}},
                   {"threads", worker_count()}};
  if (const auto* r = std::get_if<RandomSobolevDatum>(&cfg.data)) manifest["seeds"]["data"] = r->seed;
  std::string stage = "prepare-output";
  int status = 0;
  try {
    fs::create_directories(out);
    stage = std::string("run:") + to_string(cfg.experiment);
    manifest["results"] = execute_experiment(cfg, out);
    stage = "done";
    manifest["status"] = "ok";
  } catch (const std::exception& e) {
    manifest["status"] = "error";
    manifest["failure_stage"] = stage;
    json err = {{"type", error_kind(e)}, {"message", e.what()}};
    if (const auto* b = dynamic_cast<const BlowUpError*>(&e)) {
      err["blowup_time"] = b->time();
      err["sup_norm"] = b->sup_norm();
    }
    manifest["error"] = err;
    status = dynamic_cast<const Error*>(&e) ? 1 : 2;
  }
  manifest["wall_time_seconds"] =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  try {
    write_json(out / "manifest.json", manifest);
  } catch (const std::exception&) {
    return status ? status : 2;
  }
  return status;
}

}  // namespace fdnls
