#pragma once

#include <string>
#include <utility>
#include <vector>

#include "fdnls/dynamics.hpp"
#include "fdnls/field.hpp"
#include "fdnls/lattice.hpp"

namespace fdnls {

/// u_0 = A + eps * sum_k phase_k e^{ikx}.
struct CWSpec {
  double A = 1.0;
  double eps = 1e-3;
  std::vector<std::pair<int, cplx>> modes;

  /// A > 0, 0 <= eps <= 1e-2, unit phases, modes in the dual range.
  void validate(const Lattice& lattice) const;
  Field initial_field(const Lattice& lattice) const;
};

enum class MIRegime { LatticeSaturated, Interior };
const char* to_string(MIRegime r);

/// Omega^2(k) = sigma_h(k) (sigma_h(k) + 2 mu A^2), k real.
double mi_omega_sq(const Lattice& lattice, const ModelParams& params, double A, double k);

/// Direct form of the instability region: mu = -1 and 0 < sigma_h(k) < 2 A^2.
bool in_instability_region(const Lattice& lattice, const ModelParams& params, double A,
                           double k);

/// Saturated branch sqrt((2A^2 - S) S), S = (2/h)^alpha.
double max_gain_saturated(double h, double alpha, double A);
/// Interior branch Omega_m' = A^2.
double max_gain_interior(double A);
/// Continuous maximum of sqrt(-Omega^2) over xi in (0, pi/h]; branch by regime.
double max_gain_theory(double h, double alpha, double A);

struct MIReport {
  std::vector<int> modes;  // dual range -M..M-1
  std::vector<double> omega_sq;
  std::vector<double> gain;
  std::vector<int> unstable_set;
  double omega_max = 0.0;  // max of gain over lattice modes
  int k_max = 0;           // |k_m|; M in the saturated regime
  double xi_m = 0.0;       // NaN when h A^{2/alpha} / 2 > 1
  double omega_m_prime = 0.0;
  MIRegime regime = MIRegime::Interior;

  double gain_at(int k) const;
};

MIReport mi_dispersion(const Lattice& lattice, const ModelParams& params, double A);

enum class GrowthStatus { Growing, Stable, UnderResolved };
const char* to_string(GrowthStatus s);

struct SidebandGrowth {
  int k;
  GrowthStatus status;
  double slope;          // NaN unless Growing
  double window_start;   // times bounding the fit window
  double window_end;
  int points;
  std::vector<double> times;
  std::vector<double> amplitudes;  // |F_h u(t,k)| / (2 pi)
};

/// Evolves the full lattice equation and fits log amplitude over the window
/// where the mode lies in [10 eps, 0.01 A].
std::vector<SidebandGrowth> measure_sideband_growth(const CWSpec& cw, const ModelParams& params,
                                                    const Lattice& lattice,
                                                    const SolverConfig& cfg,
                                                    const std::vector<int>& k_track,
                                                    std::vector<double>* sup_norms = nullptr);

struct RecurrenceReport {
  bool localized = false;
  double first_localization_time;  // NaN if never
  std::vector<double> recurrence_times;
  double irregularity_index;       // NaN with fewer than three peaks
};

/// Localization threshold 2A on sup|u|. Each excursion above it contributes
/// its peak time; the index is the coefficient of variation of peak spacing.
RecurrenceReport recurrence_diagnostic(const std::vector<double>& times,
                                       const std::vector<double>& sup_norms, double A);
RecurrenceReport recurrence_diagnostic(const Trajectory& trajectory, double A);

struct GainRow {
  double A;
  double omega_theory;   // continuous maximum from the branch formulas
  double omega_lattice;  // max gain over lattice modes
  int k_m;
  double slope_measured;
  GrowthStatus status;
};

/// Perturbs the CW at its fastest lattice mode k_m and measures the growth.
std::vector<GainRow> sweep_max_gain(const ModelParams& params, const std::vector<double>& A_list,
                                    const Lattice& lattice, double eps);

/// Boolean mask Omega^2(xi) < 0 over a (xi, A) grid; xi = 0 excluded.
std::vector<std::vector<bool>> instability_mask(const Lattice& lattice, const ModelParams& params,
                                                const std::vector<double>& xi_grid,
                                                const std::vector<double>& A_grid);

}  // namespace fdnls
