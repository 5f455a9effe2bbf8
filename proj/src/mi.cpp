#include "fdnls/mi.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "fdnls/errors.hpp"
#include "fdnls/fourier.hpp"
#include "fdnls/parallel.hpp"
#include "fdnls/spectral.hpp"

namespace fdnls {

namespace {
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
}

void CWSpec::validate(const Lattice& lattice) const {
  if (!(A > 0.0)) throw DomainError("CW spec: A must be positive");
  if (!(eps >= 0.0) || eps > 1e-2) throw DomainError("CW spec: eps must lie in [0, 1e-2]");
  for (const auto& [k, phase] : modes) {
    if (!lattice.contains_mode(k)) {
      throw DomainError("CW spec: mode " + std::to_string(k) + " outside the dual range");
    }
    if (std::abs(std::abs(phase) - 1.0) > 1e-12) {
      throw DomainError("CW spec: perturbation phases must be unit complex numbers");
    }
  }
}

Field CWSpec::initial_field(const Lattice& lattice) const {
  validate(lattice);
  return Field::from_function(lattice, [&](double x) {
    cplx u = A;
    for (const auto& [k, phase] : modes) u += eps * phase * std::polar(1.0, k * x);
    return u;
  });
}

const char* to_string(MIRegime r) {
  return r == MIRegime::LatticeSaturated ? "LatticeSaturated" : "Interior";
}

const char* to_string(GrowthStatus s) {
  switch (s) {
    case GrowthStatus::Growing: return "growing";
    case GrowthStatus::Stable: return "stable";
    case GrowthStatus::UnderResolved: return "under-resolved";
  }
  return "?";
}

double mi_omega_sq(const Lattice& lattice, const ModelParams& params, double A, double k) {
  const double s = symbol_sigma_h(lattice, params.alpha, k);
  return s * (s + 2.0 * params.mu * A * A);
}

bool in_instability_region(const Lattice& lattice, const ModelParams& params, double A,
                           double k) {
  if (params.mu != -1) return false;
  const double s = symbol_sigma_h(lattice, params.alpha, k);
  return s > 0.0 && s < 2.0 * A * A;
}

double max_gain_saturated(double h, double alpha, double A) {
  const double S = std::pow(2.0 / h, alpha);
  return std::sqrt((2.0 * A * A - S) * S);
}

double max_gain_interior(double A) { return A * A; }

double max_gain_theory(double h, double alpha, double A) {
  return std::pow(2.0 / h, alpha) <= A * A ? max_gain_saturated(h, alpha, A)
                                          : max_gain_interior(A);
}

double MIReport::gain_at(int k) const {
  const auto it = std::find(modes.begin(), modes.end(), k);
  if (it == modes.end()) return 0.0;
  return gain[it - modes.begin()];
}

MIReport mi_dispersion(const Lattice& lattice, const ModelParams& params, double A) {
  params.validate();
  if (!(A > 0.0)) throw DomainError("mi_dispersion: A must be positive");
  MIReport r;
  const int M = lattice.M();
  const double h = lattice.h();
  for (int k = -M; k < M; ++k) {
    const double w2 = mi_omega_sq(lattice, params, A, k);
    r.modes.push_back(k);
    r.omega_sq.push_back(w2);
    const bool unstable = k != 0 && w2 < 0.0;
    r.gain.push_back(unstable ? std::sqrt(-w2) : 0.0);
    if (unstable) r.unstable_set.push_back(k);
  }
  const double arg = h * std::pow(A, 2.0 / params.alpha) / 2.0;
  r.xi_m = arg <= 1.0 ? (2.0 / h) * std::asin(arg) : kNaN;
  const double S = std::pow(2.0 / h, params.alpha);
  r.regime = S <= A * A ? MIRegime::LatticeSaturated : MIRegime::Interior;

  if (params.mu != -1) {
    r.omega_max = 0.0;
    r.k_max = 0;
    r.omega_m_prime = 0.0;
    return r;
  }
  if (r.regime == MIRegime::LatticeSaturated) {
    r.k_max = M;
    r.omega_m_prime = max_gain_saturated(h, params.alpha, A);
    r.omega_max = r.gain_at(-M);
  } else {
    r.omega_m_prime = max_gain_interior(A);
    const int lo = static_cast<int>(std::floor(r.xi_m));
    const int hi = static_cast<int>(std::ceil(r.xi_m));
    const double g_lo = lo >= 1 ? -mi_omega_sq(lattice, params, A, lo) : 0.0;
    const double g_hi = hi <= M ? -mi_omega_sq(lattice, params, A, hi) : 0.0;
    r.k_max = g_hi > g_lo ? hi : lo;
    const double best = std::max(g_lo, g_hi);
    r.omega_max = best > 0.0 ? std::sqrt(best) : 0.0;
    if (r.omega_max == 0.0) r.k_max = 0;
  }
  return r;
}

namespace {

SidebandGrowth fit_growth(int k, std::vector<double> times, std::vector<double> amps,
                          double eps, double A) {
  SidebandGrowth g{k, GrowthStatus::Stable, kNaN, kNaN, kNaN, 0, std::move(times),
                   std::move(amps)};
  const double lo = 10.0 * eps, hi = 0.01 * A;
  const auto& t = g.times;
  const auto& a = g.amplitudes;
  std::size_t first = a.size();
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] >= lo) {
      first = i;
      break;
    }
  }
  if (first == a.size()) return g;
  std::size_t last = first;
  while (last + 1 < a.size() && a[last + 1] >= lo && a[last + 1] <= hi) ++last;
  if (a[first] > hi || last - first + 1 < 3) {
    g.status = GrowthStatus::UnderResolved;
    return g;
  }
  std::vector<double> x, y;
  for (std::size_t i = first; i <= last; ++i) {
    x.push_back(t[i]);
    y.push_back(std::log(a[i]));
  }
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / x.size();
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / y.size();
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  g.status = GrowthStatus::Growing;
  g.slope = sxy / sxx;
  g.window_start = x.front();
  g.window_end = x.back();
  g.points = static_cast<int>(x.size());
  return g;
}

}  // namespace

std::vector<SidebandGrowth> measure_sideband_growth(const CWSpec& cw, const ModelParams& params,
                                                    const Lattice& lattice,
                                                    const SolverConfig& cfg,
                                                    const std::vector<int>& k_track,
                                                    std::vector<double>* sup_norms) {
  params.validate();
  cw.validate(lattice);
  for (int k : k_track) {
    if (!lattice.contains_mode(k)) {
      throw DomainError("measure_sideband_growth: tracked mode " + std::to_string(k) +
                        " outside the dual range");
    }
  }
  std::vector<double> times;
  std::vector<std::vector<double>> amps(k_track.size());
  RecordOptions ro{false, [&](const SnapshotView& s) {
                     times.push_back(s.time);
                     if (sup_norms) {
                       double sup = 0.0;
                       for (const auto& v : s.physical) sup = std::max(sup, std::abs(v));
                       sup_norms->push_back(sup);
                     }
                     for (std::size_t j = 0; j < k_track.size(); ++j) {
                       amps[j].push_back(
                           std::abs(s.spectrum[lattice.index_of_mode(k_track[j])]) / kTwoPi);
                     }
                   }};
  evolve_nonlinear(cw.initial_field(lattice), params, cfg, ro);
  std::vector<SidebandGrowth> out;
  for (std::size_t j = 0; j < k_track.size(); ++j) {
    out.push_back(fit_growth(k_track[j], times, amps[j], cw.eps, cw.A));
  }
  return out;
}

RecurrenceReport recurrence_diagnostic(const std::vector<double>& times,
                                       const std::vector<double>& sup_norms, double A) {
  if (times.size() != sup_norms.size()) {
    throw ContractError("recurrence_diagnostic: times and norms differ in length");
  }
  RecurrenceReport r;
  r.first_localization_time = kNaN;
  r.irregularity_index = kNaN;
  const double threshold = 2.0 * A;
  std::size_t i = 0;
  while (i < times.size()) {
    if (sup_norms[i] <= threshold) {
      ++i;
      continue;
    }
    if (!r.localized) {
      r.localized = true;
      r.first_localization_time = times[i];
    }
    std::size_t peak = i;
    while (i < times.size() && sup_norms[i] > threshold) {
      if (sup_norms[i] > sup_norms[peak]) peak = i;
      ++i;
    }
    // An excursion still open at the end of the run has no confirmed peak.
    if (i < times.size()) r.recurrence_times.push_back(times[peak]);
  }
  const auto& p = r.recurrence_times;
  if (p.size() >= 3) {
    std::vector<double> gaps;
    for (std::size_t j = 1; j < p.size(); ++j) gaps.push_back(p[j] - p[j - 1]);
    const double mean = std::accumulate(gaps.begin(), gaps.end(), 0.0) / gaps.size();
    double var = 0.0;
    for (double g : gaps) var += (g - mean) * (g - mean);
    var /= gaps.size();
    r.irregularity_index = std::sqrt(var) / mean;
  }
  return r;
}

RecurrenceReport recurrence_diagnostic(const Trajectory& trajectory, double A) {
  std::vector<double> sups;
  for (const Field& f : trajectory.snapshots) {
    sups.push_back(lebesgue_norm_h(to_physical(f), std::numeric_limits<double>::infinity()));
  }
  return recurrence_diagnostic(trajectory.times, sups, A);
}

std::vector<GainRow> sweep_max_gain(const ModelParams& params, const std::vector<double>& A_list,
                                    const Lattice& lattice, double eps) {
  params.validate();
  for (std::size_t i = 0; i < A_list.size(); ++i) {
    if (!(A_list[i] > 0.0) || (i > 0 && A_list[i] <= A_list[i - 1])) {
      throw DomainError("sweep_max_gain: A_list must be positive and ascending");
    }
  }
  return parallel_map(A_list, [&](double A) {
    const MIReport rep = mi_dispersion(lattice, params, A);
    GainRow row{A, max_gain_theory(lattice.h(), params.alpha, A), rep.omega_max, rep.k_max,
                kNaN, GrowthStatus::Stable};
    if (rep.omega_max <= 0.0) return row;
    const int k = lattice.contains_mode(rep.k_max) ? rep.k_max : -rep.k_max;
    CWSpec cw{A, eps, {{k, cplx{1.0, 0.0}}}};
    const double fastest = std::max(symbol_sigma_h(lattice, params.alpha, -lattice.M()), A * A);
    SolverConfig cfg;
    cfg.t_end = 1.5 * std::log(0.01 * A / eps) / rep.omega_max;
    cfg.dt = std::min(0.1 / std::max(1.0, fastest), cfg.t_end / 200.0);
    cfg.record_stride = std::max(1, cfg.steps() / 400);
    const auto g = measure_sideband_growth(cw, params, lattice, cfg, {k});
    row.slope_measured = g.front().slope;
    row.status = g.front().status;
    return row;
  });
}

std::vector<std::vector<bool>> instability_mask(const Lattice& lattice, const ModelParams& params,
                                                const std::vector<double>& xi_grid,
                                                const std::vector<double>& A_grid) {
  params.validate();
  std::vector<std::vector<bool>> mask(A_grid.size(), std::vector<bool>(xi_grid.size()));
  for (std::size_t a = 0; a < A_grid.size(); ++a) {
    for (std::size_t x = 0; x < xi_grid.size(); ++x) {
      mask[a][x] = xi_grid[x] != 0.0 && mi_omega_sq(lattice, params, A_grid[a], xi_grid[x]) < 0.0;
    }
  }
  return mask;
}

}  // namespace fdnls
