#pragma once

#include <cstdint>
#include <vector>

#include "fdnls/field.hpp"
#include "fdnls/lattice.hpp"

namespace fdnls {

/// phi(xi) = -t |2/h sin(h xi / 2)|^alpha + xi x.
struct PhaseSpec {
  double h;
  double t;
  double x;
  double alpha;

  void validate() const;
  double operator()(double xi) const;
};

/// K_t(x) = (2 pi)^{-1} sum_{|k| <= M N} e^{i(-t sigma_h(k) + kx)} at every site.
Field kernel_sum(const Lattice& lattice, const ModelParams& params, double t, double N);

struct CriticalFrequencies {
  double xi_0;       // (2/h) arccos(alpha^{-1/2}), root of phi''
  double xi_c_unit;  // 2 arccos(alpha^{-1/2}), the same at h = 1
};

/// Requires alpha in (1, 2].
CriticalFrequencies critical_frequencies(double h, double alpha);

/// (pi^{2-alpha} / (2 alpha)) (h/N)^{alpha-1}.
double admissible_time(const Lattice& lattice, double alpha, double N);

/// |alpha-1|^{-1/3} (N/h)^{1-alpha/3} |t|^{-1/3}.
double dispersive_bound(const Lattice& lattice, double alpha, double N, double t);

struct DispersiveEntry {
  double alpha;
  int M;
  double N;
  double t;
  double kernel_sup;  // ||K_t||_{L^inf_h}
  double ratio;       // kernel_sup / dispersive_bound; NaN if skipped
  bool admitted;
};

/// Relative grids use t = fraction * admissible_time, so every entry is
/// admitted; absolute grids skip and flag entries outside the window.
struct TimeGrid {
  std::vector<double> values;
  bool relative = true;
};

std::vector<DispersiveEntry> dispersive_bound_check(double alpha, const std::vector<int>& M_list,
                                                    const TimeGrid& t_grid,
                                                    const std::vector<double>& N_list);

/// Largest admitted ratio for each M (in M_list order).
std::vector<double> sup_ratio_by_M(const std::vector<DispersiveEntry>& table,
                                   const std::vector<int>& M_list);

/// Normalized bump psi_hat(xi) = c exp(-1/(1 - xi^2)) on (-1, 1), unit integral.
double bump_hat(double xi);
/// psi(y) = (2 pi)^{-1} int psi_hat(xi) e^{i xi y} d xi (real and even).
double bump_profile(double y);

struct WavepacketRow {
  int M;
  double h;
  bool admitted;
  double tau;
  double ratio;  // ||U_h(T) f||_{L^inf_h} / ||f||_{L^1_h}
};

struct WavepacketReport {
  std::vector<WavepacketRow> rows;
  double slope;           // fitted over admitted rows
  double expected_slope;  // -(1 - alpha/3)
};

/// h admitted iff h <= 0.1 min(T^{-1/(3-alpha)}, T^{1/alpha}|alpha-1|^{3(2-alpha)/(2 alpha)},
/// |alpha-1|^{(2-alpha)/2}).
bool wavepacket_admits(double h, double alpha, double T);

WavepacketReport blowup_wavepacket_demo(double alpha, double T, const std::vector<int>& M_list);

struct StrichartzSmoke {
  std::vector<int> M_values;
  std::vector<double> ratios;  // sampled ||U_h f||_{L^6_t L^inf_h} / ||f||_{H^{1/3+0.01}_h}
  double calibrated_constant;  // max ratio on the smallest grid
  bool passed;                 // every ratio <= 2 * calibrated constant
};

StrichartzSmoke strichartz_smoke_check(double alpha, const std::vector<int>& M_list,
                                       int samples, std::uint64_t seed);

}  // namespace fdnls
