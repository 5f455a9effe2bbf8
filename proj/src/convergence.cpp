#include "fdnls/convergence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "fdnls/dynamics.hpp"
#include "fdnls/errors.hpp"
#include "fdnls/fourier.hpp"
#include "fdnls/parallel.hpp"
#include "fdnls/spectral.hpp"
#include "fdnls/transfer.hpp"

namespace fdnls {

RateFit fit_rate(const std::vector<double>& h, const std::vector<double>& errors) {
  if (h.size() != errors.size() || h.size() < 2) {
    throw ContractError("fit_rate: need matching arrays of length >= 2");
  }
  const std::size_t n = h.size();
  double sx = 0, sy = 0;
  std::vector<double> x(n), y(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(h[i] > 0.0) || !(errors[i] > 0.0)) {
      throw DomainError("fit_rate: h and errors must be positive");
    }
    x[i] = std::log(h[i]);
    y[i] = std::log(errors[i]);
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  const double rate = sxy / sxx;
  const double r2 = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
  return {rate, std::exp(my - rate * mx), r2};
}

void finalize_record(ConvergenceRecord& rec) {
  const bool all_tiny = std::all_of(rec.errors.begin(), rec.errors.end(),
                                    [](double e) { return e <= 1e-10; });
  rec.monotone = true;
  for (std::size_t i = 1; i < rec.errors.size(); ++i) {
    if (rec.errors[i] > 1.1 * rec.errors[i - 1] && rec.errors[i] > 1e-10) {
      rec.monotone = false;
    }
  }
  if (all_tiny) {
    rec.degenerate = true;
    rec.fitted_rate = std::numeric_limits<double>::quiet_NaN();
    rec.fitted_coefficient = std::numeric_limits<double>::quiet_NaN();
    rec.r_squared = std::numeric_limits<double>::quiet_NaN();
    rec.notes.push_back("degenerate: zero error");
    return;
  }
  const RateFit fit = fit_rate(rec.h_values, rec.errors);
  rec.fitted_rate = fit.rate;
  rec.fitted_coefficient = fit.coefficient;
  rec.r_squared = fit.r_squared;
  rec.preasymptotic = fit.r_squared < 0.98;
  if (rec.preasymptotic) rec.notes.push_back("preasymptotic: r_squared below 0.98");
  if (!rec.monotone) rec.notes.push_back("errors not monotone in M (10% tolerance)");
}

namespace {

void check_sweep(const ModelParams& params, const std::vector<int>& M_list, int M_ref,
                 const char* who) {
  params.validate();
  params.require_dispersive_range(who);
  if (M_list.size() < 3) {
    throw DomainError(std::string(who) + ": M_list needs at least 3 entries");
  }
  for (std::size_t i = 0; i < M_list.size(); ++i) {
    if (M_list[i] < 1) throw DomainError(std::string(who) + ": M must be positive");
    if (i > 0 && M_list[i] <= M_list[i - 1]) {
      throw DomainError(std::string(who) + ": M_list must be strictly increasing");
    }
  }
  if (8 * M_list.back() > M_ref) {
    throw DomainError(std::string(who) + ": M_ref = " + std::to_string(M_ref) +
                      " must be at least 8 * max(M_list)");
  }
}

int resolve_M_ref(const SweepOptions& opts, const std::vector<int>& M_list) {
  return opts.M_ref > 0 ? opts.M_ref : 8 * (M_list.empty() ? 1 : M_list.back());
}

double resolve_dt(const SweepOptions& opts, const ModelParams& params,
                  const std::vector<int>& M_list) {
  return opts.dt > 0.0 ? opts.dt : default_time_step(Lattice(M_list.back()), params);
}

SolverConfig make_cfg(double dt, double t_end, int records) {
  SolverConfig cfg;
  cfg.dt = std::min(dt, t_end);
  cfg.t_end = t_end;
  const int steps = cfg.steps();
  cfg.record_stride = records <= 0 ? std::max(1, steps) : std::max(1, steps / records);
  return cfg;
}

RecordOptions keep_all() { return RecordOptions{true, {}}; }

ContinuumTrajectory reference_run(const ContinuumField& u0, const ModelParams& params,
                                  const SolverConfig& cfg) {
  return evolve_nonlinear(u0, params, cfg, keep_all());
}

// Distance between the reference and its dt/2 and 2 M_ref repeats at t_end.
double reference_self_difference(const ContinuumField& u0, const ModelParams& params,
                                 const SolverConfig& cfg, const ContinuumField& final_ref,
                                 const std::function<ContinuumField(const Lattice&)>& rebuild) {
  SolverConfig half = cfg;
  half.dt = cfg.effective_dt() / 2.0;
  half.record_stride = std::max(1, half.steps());
  SolverConfig once = cfg;
  once.record_stride = std::max(1, cfg.steps());
  RecordOptions none{false, {}};
  const auto fine_t = evolve_nonlinear(u0, params, half, none);
  const Lattice doubled(2 * u0.reference().M());
  const auto fine_x = evolve_nonlinear(rebuild(doubled), params, once, none);
  return std::max(l2_torus_distance(final_ref, fine_t.final_state),
                  l2_torus_distance(final_ref, fine_x.final_state));
}

// Errors at every shared record time of one lattice run against its reference.
std::vector<double> errors_over_time(const Trajectory& lat, const ContinuumTrajectory& ref) {
  std::vector<double> out;
  for (std::size_t i = 0; i < lat.snapshots.size(); ++i) {
    out.push_back(l2_torus_error(lat.snapshots[i], ref.snapshots[i]));
  }
  return out;
}

void check_reference(ConvergenceRecord& rec, double self_diff, const char* who) {
  rec.reference_self_difference = self_diff;
  if (rec.errors.empty()) return;
  const double min_err = *std::min_element(rec.errors.begin(), rec.errors.end());
  if (min_err <= 1e-10) return;
  if (self_diff > 0.01 * min_err) {
    throw ReferenceError(std::string(who) + ": reference self-difference " +
                         std::to_string(self_diff) + " exceeds 1% of the smallest error " +
                         std::to_string(min_err));
  }
}

Trajectory lattice_run(const ContinuumField& u0, const Lattice& lattice,
                       const ModelParams& params, const SolverConfig& cfg,
                       const RecordOptions& opts) {
  return evolve_nonlinear(discretize_dh(u0, lattice), params, cfg, opts);
}

}  // namespace

ConvergenceRecord run_continuum_limit(const DatumSpec& datum, const ModelParams& params,
                                      double t_eval, const std::vector<int>& M_list,
                                      const SweepOptions& opts) {
  const int M_ref = resolve_M_ref(opts, M_list);
  check_sweep(params, M_list, M_ref, "run_continuum_limit");
  if (!(t_eval > 0.0)) throw DomainError("run_continuum_limit: t_eval must be positive");
  const Lattice reference(M_ref);
  const ContinuumField u0 = make_continuum_datum(datum, reference);
  const SolverConfig cfg = make_cfg(resolve_dt(opts, params, M_list), t_eval, 0);

  const ContinuumTrajectory ref = reference_run(u0, params, cfg);

  const auto finals = parallel_map(M_list, [&](int M) {
    const Lattice lat(M);
    try {
      const Trajectory run = lattice_run(u0, lat, params, cfg, RecordOptions{false, {}});
      return l2_torus_error(run.final_state, ref.final_state);
    } catch (const BlowUpError& e) {
      throw BlowUpError(e.time(), e.sup_norm(), "lattice run with M = " + std::to_string(M));
    }
  });

  ConvergenceRecord rec;
  for (std::size_t i = 0; i < M_list.size(); ++i) {
    rec.M_values.push_back(M_list[i]);
    rec.h_values.push_back(Lattice(M_list[i]).h());
    rec.errors.push_back(finals[i]);
  }
  if (opts.validate_reference) {
    const double diff = reference_self_difference(
        u0, params, cfg, ref.final_state,
        [&](const Lattice& fine) { return make_continuum_datum(datum, fine); });
    check_reference(rec, diff, "run_continuum_limit");
  }
  finalize_record(rec);
  return rec;
}

SharpnessReport run_sharpness_experiment(const ModelParams& params, double T, double eps,
                                         const std::vector<int>& M_list,
                                         const SweepOptions& opts) {
  const int M_ref = resolve_M_ref(opts, M_list);
  check_sweep(params, M_list, M_ref, "run_sharpness_experiment");
  const Lattice reference(M_ref);
  const SolverConfig cfg = make_cfg(resolve_dt(opts, params, M_list), T, opts.records);

  struct Cell {
    double sup_error;
    double self_diff;
    int k0;
    double norm;
  };
  const auto cells = parallel_map(M_list, [&](int M) {
    const Lattice lat(M);
    const ContinuumField u0 = sharpness_initial_datum(lat, reference, params, T, eps);
    const ContinuumTrajectory ref = reference_run(u0, params, cfg);
    Trajectory run = [&] {
      try {
        return lattice_run(u0, lat, params, cfg, keep_all());
      } catch (const BlowUpError& e) {
        throw BlowUpError(e.time(), e.sup_norm(), "lattice run with M = " + std::to_string(M));
      }
    }();
    const auto errs = errors_over_time(run, ref);
    double diff = 0.0;
    if (opts.validate_reference) {
      diff = reference_self_difference(u0, params, cfg, ref.final_state, [&](const Lattice& fine) {
        return sharpness_initial_datum(lat, fine, params, T, eps);
      });
    }
    return Cell{*std::max_element(errs.begin(), errs.end()), diff,
                sharpness_mode(lat, params, T), u0.sobolev_norm(params.alpha / 2.0)};
  });

  SharpnessReport out;
  double worst_diff = 0.0;
  for (std::size_t i = 0; i < M_list.size(); ++i) {
    out.record.M_values.push_back(M_list[i]);
    out.record.h_values.push_back(Lattice(M_list[i]).h());
    out.record.errors.push_back(cells[i].sup_error);
    out.k0_values.push_back(cells[i].k0);
    out.datum_norms.push_back(cells[i].norm);
    worst_diff = std::max(worst_diff, cells[i].self_diff);
  }
  if (opts.validate_reference) check_reference(out.record, worst_diff, "run_sharpness_experiment");
  const double a = params.alpha;
  out.rate_interior = a / (2.0 + a);
  out.rate_competing = 2.0 / (2.0 + a);
  out.record.expected_rate = out.rate_interior;
  finalize_record(out.record);
  out.distance_interior = std::abs(out.record.fitted_rate - out.rate_interior);
  out.distance_competing = std::abs(out.record.fitted_rate - out.rate_competing);
  const auto [lo, hi] = std::minmax_element(out.datum_norms.begin(), out.datum_norms.end());
  if (*hi > 1.2 * *lo) out.record.notes.push_back("datum norm varies by more than 1.2x");
  return out;
}

namespace {

// Relative l^2 mass of F_h[|u|^2 u] outside |k| <= kc.
double cubic_leak(const SnapshotView& snap, int kc) {
  const Lattice& lat = snap.lattice;
  std::vector<cplx> cubic(snap.physical.begin(), snap.physical.end());
  for (auto& v : cubic) v *= std::norm(v);
  const Field spec = to_frequency(Field(lat, std::move(cubic), Representation::Physical));
  double inside = 0.0, outside = 0.0;
  const auto vals = spec.values();
  for (int i = 0; i < lat.size(); ++i) {
    const double w = std::norm(vals[i]);
    (std::abs(lat.mode_at_index(i)) <= kc ? inside : outside) += w;
  }
  const double total = inside + outside;
  return total > 0.0 ? std::sqrt(outside / total) : 0.0;
}

}  // namespace

CompactSupportReport run_compact_support_experiment(const DatumSpec& datum,
                                                    const ModelParams& params, double T,
                                                    const std::vector<int>& M_list,
                                                    const SweepOptions& opts) {
  const int M_ref = resolve_M_ref(opts, M_list);
  check_sweep(params, M_list, M_ref, "run_compact_support_experiment");
  if (!(T > 0.0)) throw DomainError("run_compact_support_experiment: T must be positive");
  const int k_max = datum_max_mode(datum);
  if (3 * k_max >= M_list.front()) {
    throw DomainError("run_compact_support_experiment: need 3 k_max < M, got k_max = " +
                      std::to_string(k_max) + ", M = " + std::to_string(M_list.front()));
  }
  const Lattice reference(M_ref);
  const ContinuumField u0 = make_continuum_datum(datum, reference);
  const SolverConfig cfg = make_cfg(resolve_dt(opts, params, M_list), T, opts.records);
  const ContinuumTrajectory ref = reference_run(u0, params, cfg);
  const int kc = 3 * k_max;

  struct Cell {
    double sup_error;
    double leak;
  };
  const auto cells = parallel_map(M_list, [&](int M) {
    const Lattice lat(M);
    double leak = 0.0;
    RecordOptions ro{true, [&](const SnapshotView& s) { leak = std::max(leak, cubic_leak(s, kc)); }};
    try {
      const Trajectory run = lattice_run(u0, lat, params, cfg, ro);
      const auto errs = errors_over_time(run, ref);
      return Cell{*std::max_element(errs.begin(), errs.end()), leak};
    } catch (const BlowUpError& e) {
      throw BlowUpError(e.time(), e.sup_norm(), "lattice run with M = " + std::to_string(M));
    }
  });

  CompactSupportReport out;
  out.k_max = k_max;
  out.support_leak = 0.0;
  for (std::size_t i = 0; i < M_list.size(); ++i) {
    out.record.M_values.push_back(M_list[i]);
    out.record.h_values.push_back(Lattice(M_list[i]).h());
    out.record.errors.push_back(cells[i].sup_error);
    out.support_leak = std::max(out.support_leak, cells[i].leak);
  }
  out.record.expected_rate = 1.0;
  if (opts.validate_reference) {
    const double diff = reference_self_difference(
        u0, params, cfg, ref.final_state,
        [&](const Lattice& fine) { return make_continuum_datum(datum, fine); });
    check_reference(out.record, diff, "run_compact_support_experiment");
  }
  if (out.support_leak > 1e-8) {
    out.record.notes.push_back("warning: spectral support of |u_h|^2 u_h leaves [-3k_max, 3k_max] (leak " +
                               std::to_string(out.support_leak) + ")");
  }
  finalize_record(out.record);
  return out;
}

KmaxSweep run_kmax_sweep(const ModelParams& params, double T, const std::vector<int>& k_list,
                         const std::vector<int>& M_list, const SweepOptions& opts) {
  if (k_list.size() < 2) throw DomainError("run_kmax_sweep: need at least 2 modes");
  KmaxSweep out;
  out.expected_exponent = 1.0 - params.alpha / 2.0;
  std::vector<double> ks;
  for (int k : k_list) {
    PlaneWaveSpec spec;
    spec.n = k;
    const CompactSupportReport rep =
        run_compact_support_experiment(PlaneWaveDatum{spec}, params, T, M_list, opts);
    const double c = rep.record.errors.back() / rep.record.h_values.back();
    const double energy_norm = std::sqrt(kTwoPi) * std::pow(japanese_bracket(k), params.alpha / 2.0);
    out.k_values.push_back(k);
    out.coefficients.push_back(c / energy_norm);
    ks.push_back(k);
  }
  // Coefficient grows like k^{exponent}; the fit runs on 1/k so the sign flips.
  std::vector<double> inv(ks.size());
  std::transform(ks.begin(), ks.end(), inv.begin(), [](double k) { return 1.0 / k; });
  out.exponent = -fit_rate(inv, out.coefficients).rate;
  return out;
}

}  // namespace fdnls
