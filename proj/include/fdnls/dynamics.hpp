#pragma once

#include <functional>
#include <span>
#include <vector>

#include "fdnls/field.hpp"
#include "fdnls/transfer.hpp"

namespace fdnls {

enum class Scheme { StrangSplitStep };

struct SolverConfig {
  double dt = 1e-3;
  double t_end = 0.0;
  int record_stride = 1;
  Scheme scheme = Scheme::StrangSplitStep;

  void validate() const;
  /// Number of steps; dt is shrunk so that steps * dt == t_end exactly.
  int steps() const;
  double effective_dt() const;
};

/// Largest step with the fastest lattice phase rotating at most 0.1 rad:
/// 0.1 * min(1, 1 / sigma_h(M)).
double default_time_step(const Lattice& lattice, const ModelParams& params);

/// Sup-norm above which (or on non-finite values) a run is declared blown up.
inline constexpr double kBlowUpThreshold = 1e8;

struct ConservationLog {
  std::vector<double> times;
  std::vector<double> mass;
  std::vector<double> energy;
};

/// View handed to observers at every record. Both spans are in natural order;
/// `spectrum` is F_h of `physical` (for continuum runs, the truncated
/// Fourier coefficients on the reference lattice).
struct SnapshotView {
  double time;
  const Lattice& lattice;
  std::span<const cplx> physical;
  std::span<const cplx> spectrum;
};

struct RecordOptions {
  bool keep_snapshots = true;
  std::function<void(const SnapshotView&)> observer;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<Field> snapshots;  // empty unless keep_snapshots
  Field final_state;
  ConservationLog log;
};

struct ContinuumTrajectory {
  std::vector<double> times;
  std::vector<ContinuumField> snapshots;
  ContinuumField final_state;
  ConservationLog log;
};

/// U_h(t) f, multiplier e^{-i t sigma_h(k)}. Keeps the input representation.
Field linear_propagate_discrete(const Field& f, double t, const ModelParams& params);

/// U(t) u, multiplier e^{-i t |k|^alpha}.
ContinuumField linear_propagate_continuum(const ContinuumField& u, double t,
                                          const ModelParams& params);

/// M_h = ||u||^2_{L^2_h}.
double discrete_mass(const Field& u);
/// H_h = 1/2 || |grad_h|^{alpha/2} u ||^2 + mu/4 ||u||^4_{L^4_h}.
double discrete_energy(const Field& u, const ModelParams& params);

double continuum_mass(const ContinuumField& u);
double continuum_energy(const ContinuumField& u, const ModelParams& params);

/// Strang split-step integration of the lattice equation
///   i u' = (-Delta_h)^{alpha/2} u + mu |u|^2 u
/// with exact nonlinear-phase and exact linear sub-flows. Throws BlowUpError.
Trajectory evolve_nonlinear(const Field& u0, const ModelParams& params,
                            const SolverConfig& cfg, const RecordOptions& opts = {});

/// Same scheme for the torus equation on the reference lattice, with the
/// cubic term projected onto |k| <= bandlimit once per step.
ContinuumTrajectory evolve_nonlinear(const ContinuumField& u0,
                                     const ModelParams& params,
                                     const SolverConfig& cfg,
                                     const RecordOptions& opts = {});

}  // namespace fdnls
