#include "fdnls/dispersive.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "fdnls/convergence.hpp"
#include "fdnls/data.hpp"
#include "fdnls/dynamics.hpp"
#include "fdnls/errors.hpp"
#include "fdnls/fourier.hpp"
#include "fdnls/parallel.hpp"
#include "fdnls/spectral.hpp"

namespace fdnls {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kInf = std::numeric_limits<double>::infinity();

void require_alpha(double alpha, const char* who) {
  if (!(alpha > 1.0) || alpha > 2.0) {
    throw DomainError(std::string(who) + ": alpha must lie in (1, 2], got " +
                      std::to_string(alpha));
  }
}

}  // namespace

void PhaseSpec::validate() const {
  require_alpha(alpha, "phase");
  if (!(h > 0.0)) throw DomainError("phase: h must be positive");
}

double PhaseSpec::operator()(double xi) const {
  return -t * std::pow(std::abs(2.0 / h * std::sin(h * xi / 2.0)), alpha) + xi * x;
}

Field kernel_sum(const Lattice& lattice, const ModelParams& params, double t, double N) {
  params.validate();
  if (!is_dyadic_scale(lattice, N)) {
    throw DomainError("kernel_sum: N = " + std::to_string(N) + " is not a dyadic scale");
  }
  const double cutoff = lattice.M() * N;
  const Field spec = Field::from_spectrum(lattice, [&](int k) -> cplx {
    if (std::abs(k) > cutoff) return {};
    return std::polar(1.0, -t * symbol_sigma_h(lattice, params.alpha, k));
  });
  return inverse_dft(spec);
}

CriticalFrequencies critical_frequencies(double h, double alpha) {
  require_alpha(alpha, "critical_frequencies");
  if (!(h > 0.0)) throw DomainError("critical_frequencies: h must be positive");
  const double c = std::acos(1.0 / std::sqrt(alpha));
  return {2.0 / h * c, 2.0 * c};
}

double admissible_time(const Lattice& lattice, double alpha, double N) {
  return std::pow(kPi, 2.0 - alpha) / (2.0 * alpha) *
         std::pow(lattice.h() / N, alpha - 1.0);
}

double dispersive_bound(const Lattice& lattice, double alpha, double N, double t) {
  return std::pow(std::abs(alpha - 1.0), -1.0 / 3.0) *
         std::pow(N / lattice.h(), 1.0 - alpha / 3.0) * std::pow(std::abs(t), -1.0 / 3.0);
}

std::vector<DispersiveEntry> dispersive_bound_check(double alpha, const std::vector<int>& M_list,
                                                    const TimeGrid& t_grid,
                                                    const std::vector<double>& N_list) {
  require_alpha(alpha, "dispersive_bound_check");
  struct Cell {
    int M;
    double N;
    double t_value;
  };
  std::vector<Cell> cells;
  for (int M : M_list) {
    for (double N : N_list) {
      for (double tv : t_grid.values) cells.push_back({M, N, tv});
    }
  }
  const ModelParams params{alpha, -1};
  return parallel_map(cells, [&](const Cell& c) {
    const Lattice lat(c.M);
    const double window = admissible_time(lat, alpha, c.N);
    const double t = t_grid.relative ? c.t_value * window : c.t_value;
    DispersiveEntry e{alpha, c.M, c.N, t, kNaN, kNaN, false};
    // Boundary entries are admitted; the relative grid hits it exactly.
    e.admitted = t != 0.0 && std::abs(t) <= window * (1.0 + 1e-12);
    if (!e.admitted) return e;
    const Field K = kernel_sum(lat, params, t, c.N);
    e.kernel_sup = lebesgue_norm_h(K, kInf);
    e.ratio = e.kernel_sup / dispersive_bound(lat, alpha, c.N, t);
    return e;
  });
}

std::vector<double> sup_ratio_by_M(const std::vector<DispersiveEntry>& table,
                                   const std::vector<int>& M_list) {
  std::vector<double> out;
  for (int M : M_list) {
    double best = 0.0;
    for (const auto& e : table) {
      if (e.M == M && e.admitted) best = std::max(best, e.ratio);
    }
    out.push_back(best);
  }
  return out;
}

namespace {

double raw_bump(double xi) {
  if (std::abs(xi) >= 1.0) return 0.0;
  return std::exp(-1.0 / (1.0 - xi * xi));
}

// Trapezoid nodes on [-1, 1]; the bump is flat to all orders at the ends, so
// the rule converges faster than any power of the node count.
constexpr int kBumpNodes = 4096;

double bump_normalizer() {
  static const double norm = [] {
    const double dx = 2.0 / kBumpNodes;
    double s = 0.0;
    for (int i = 1; i < kBumpNodes; ++i) s += raw_bump(-1.0 + i * dx);
    return s * dx;
  }();
  return norm;
}

}  // namespace

double bump_hat(double xi) { return raw_bump(xi) / bump_normalizer(); }

double bump_profile(double y) {
  const double dx = 2.0 / kBumpNodes;
  double s = 0.0;
  for (int i = 1; i < kBumpNodes; ++i) {
    const double xi = -1.0 + i * dx;
    s += raw_bump(xi) * std::cos(xi * y);
  }
  return s * dx / bump_normalizer() / kTwoPi;
}

bool wavepacket_admits(double h, double alpha, double T) {
  const double a1 = std::abs(alpha - 1.0);
  const double bound = std::min({std::pow(T, -1.0 / (3.0 - alpha)),
                                 std::pow(T, 1.0 / alpha) * std::pow(a1, 3.0 * (2.0 - alpha) / (2.0 * alpha)),
                                 std::pow(a1, (2.0 - alpha) / 2.0)});
  return h <= 0.1 * bound;
}

WavepacketReport blowup_wavepacket_demo(double alpha, double T, const std::vector<int>& M_list) {
  require_alpha(alpha, "blowup_wavepacket_demo");
  if (!(T > 0.0)) throw DomainError("blowup_wavepacket_demo: T must be positive");
  const ModelParams params{alpha, -1};
  const double xi_c = critical_frequencies(1.0, alpha).xi_c_unit;
  WavepacketReport rep;
  rep.expected_slope = -(1.0 - alpha / 3.0);
  rep.rows = parallel_map(M_list, [&](int M) {
    const Lattice lat(M);
    WavepacketRow row{M, lat.h(), wavepacket_admits(lat.h(), alpha, T), kNaN, kNaN};
    if (!row.admitted) return row;
    row.tau = T / std::pow(lat.h(), alpha);
    const double scale = std::pow(row.tau, -1.0 / 3.0);
    // Site j of the lattice pulls back to the integer j.
    std::vector<cplx> vals(lat.size());
    for (int i = 0; i < lat.size(); ++i) {
      const int j = i - M;
      vals[i] = std::polar(bump_profile(j * scale), xi_c * j);
    }
    const Field f(lat, std::move(vals), Representation::Physical);
    const Field evolved = linear_propagate_discrete(f, T, params);
    row.ratio = lebesgue_norm_h(evolved, kInf) / lebesgue_norm_h(f, 1.0);
    return row;
  });
  std::vector<double> hs, rs;
  for (const auto& r : rep.rows) {
    if (r.admitted) {
      hs.push_back(r.h);
      rs.push_back(r.ratio);
    }
  }
  rep.slope = hs.size() >= 2 ? fit_rate(hs, rs).rate : kNaN;
  return rep;
}

StrichartzSmoke strichartz_smoke_check(double alpha, const std::vector<int>& M_list,
                                       int samples, std::uint64_t seed) {
  require_alpha(alpha, "strichartz_smoke_check");
  if (M_list.empty() || samples < 1) {
    throw DomainError("strichartz_smoke_check: need grids and samples");
  }
  const ModelParams params{alpha, -1};
  constexpr int kTimes = 64;
  StrichartzSmoke out;
  out.M_values = M_list;
  out.ratios = parallel_map(M_list, [&](int M) {
    const Lattice lat(M);
    double worst = 0.0;
    for (int s = 0; s < samples; ++s) {
      const SplitMix64 rng(seed + static_cast<std::uint64_t>(s));
      std::vector<cplx> vals(lat.size());
      for (int i = 0; i < lat.size(); ++i) {
        const double mag = rng.uniform_at(2 * i);
        vals[i] = std::polar(mag, kTwoPi * rng.uniform_at(2 * i + 1));
      }
      const Field f(lat, std::move(vals), Representation::Physical);
      double acc = 0.0;
      for (int n = 0; n < kTimes; ++n) {
        const double t = (n + 0.5) / kTimes;
        const double sup = lebesgue_norm_h(linear_propagate_discrete(f, t, params), kInf);
        acc += std::pow(sup, 6.0) / kTimes;
      }
      const double lhs = std::pow(acc, 1.0 / 6.0);
      worst = std::max(worst, lhs / sobolev_norm_h(f, 1.0 / 3.0 + 0.01));
    }
    return worst;
  });
  out.calibrated_constant = out.ratios.front();
  out.passed = std::all_of(out.ratios.begin(), out.ratios.end(),
                           [&](double r) { return r <= 2.0 * out.calibrated_constant; });
  return out;
}

}  // namespace fdnls
