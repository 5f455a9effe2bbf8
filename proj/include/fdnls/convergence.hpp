#pragma once

#include <string>
#include <vector>

#include "fdnls/data.hpp"
#include "fdnls/lattice.hpp"

namespace fdnls {

struct RateFit {
  double rate;
  double coefficient;
  double r_squared;
};

/// Least squares of log(error) = log(C) + rate * log(h).
RateFit fit_rate(const std::vector<double>& h, const std::vector<double>& errors);

struct ConvergenceRecord {
  std::vector<int> M_values;
  std::vector<double> h_values;  // descending
  std::vector<double> errors;
  double fitted_rate = 0.0;
  double fitted_coefficient = 0.0;
  double r_squared = 0.0;
  double expected_rate = 0.0;
  bool degenerate = false;     // every error <= 1e-10, fit skipped
  bool preasymptotic = false;  // r_squared < 0.98
  bool monotone = true;        // errors nonincreasing in M up to 10%
  double reference_self_difference = 0.0;
  std::vector<std::string> notes;
};

/// Fills the fit, degenerate, preasymptotic and monotone fields.
void finalize_record(ConvergenceRecord& rec);

struct SweepOptions {
  double dt = 0.0;          // 0: default_time_step on the finest lattice
  int M_ref = 0;            // 0: 8 * max(M_list)
  int records = 50;         // sharpness: number of sampled times in [0, T]
  bool validate_reference = true;
};

/// ||p_h S_h(t) d_h u_0 - S(t) u_0||_{L^2(T)} for each M at t_eval.
ConvergenceRecord run_continuum_limit(const DatumSpec& datum, const ModelParams& params,
                                      double t_eval, const std::vector<int>& M_list,
                                      const SweepOptions& opts = {});

struct SharpnessReport {
  ConvergenceRecord record;
  std::vector<int> k0_values;
  std::vector<double> datum_norms;  // ||u_0^h||_{H^{alpha/2}}
  double rate_interior;             // alpha / (2 + alpha)
  double rate_competing;            // 2 / (2 + alpha)
  double distance_interior;
  double distance_competing;
};

/// Sup over [0, T] of the L^2(T) error for the h-dependent single-mode datum.
SharpnessReport run_sharpness_experiment(const ModelParams& params, double T, double eps,
                                         const std::vector<int>& M_list,
                                         const SweepOptions& opts = {});

struct CompactSupportReport {
  ConvergenceRecord record;
  int k_max;
  /// Largest relative l^2 content of F_h[|u_h|^2 u_h] outside |k| <= 3 k_max
  /// over all records and M.
  double support_leak;
};

/// Sup over [0, T] of the L^2(T) error for finitely supported data; needs 3 k_max < M.
CompactSupportReport run_compact_support_experiment(const DatumSpec& datum,
                                                    const ModelParams& params, double T,
                                                    const std::vector<int>& M_list,
                                                    const SweepOptions& opts = {});

struct KmaxSweep {
  std::vector<int> k_values;
  std::vector<double> coefficients;  // fitted C / ||u_0||_{H^{alpha/2}}
  double exponent;                   // fitted growth of the coefficient in k
  double expected_exponent;          // 1 - alpha / 2
};

/// Single-mode data e^{ikx}: coefficient of h in the error, normalized by the
/// energy norm, as a function of k.
KmaxSweep run_kmax_sweep(const ModelParams& params, double T,
                         const std::vector<int>& k_list, const std::vector<int>& M_list,
                         const SweepOptions& opts = {});

}  // namespace fdnls
