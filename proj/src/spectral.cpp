#include "fdnls/spectral.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "fdnls/errors.hpp"
#include "fdnls/fourier.hpp"

namespace fdnls {

double symbol_sigma_h(const Lattice& lattice, double alpha, double k) {
  const double h = lattice.h();
  return std::pow(std::abs(2.0 / h * std::sin(0.5 * h * k)), alpha);
}

double symbol_sigma_0(double alpha, double k) {
  return std::pow(std::abs(k), alpha);
}

std::vector<double> sigma_h_table(const Lattice& lattice, double alpha) {
  std::vector<double> out(lattice.size());
  for (int i = 0; i < lattice.size(); ++i) {
    out[i] = symbol_sigma_h(lattice, alpha, lattice.mode_at_index(i));
  }
  return out;
}

double lowest_dyadic_scale(const Lattice& lattice) {
  // ceil(log2(h/pi)) = ceil(-log2 M) = -floor(log2 M), computed on integers.
  int floor_log2_m = 0;
  while ((2L << floor_log2_m) <= lattice.M()) ++floor_log2_m;
  return std::ldexp(1.0, -floor_log2_m - 1);
}

bool is_dyadic_scale(const Lattice& lattice, double N) {
  if (!(N > 0.0) || !std::isfinite(N)) return false;
  int exponent = 0;
  const double mantissa = std::frexp(N, &exponent);
  if (mantissa != 0.5) return false;
  return N >= lowest_dyadic_scale(lattice) && N <= 1.0;
}

namespace {

void require_scale(const Lattice& lattice, double N, const char* who) {
  if (!is_dyadic_scale(lattice, N)) {
    throw DomainError(std::string(who) + ": N = " + std::to_string(N) +
                      " is not a power of two in [N_*, 1] with N_* = " +
                      std::to_string(lowest_dyadic_scale(lattice)));
  }
}

template <typename Keep>
Field mask_modes(const Field& f, Keep keep) {
  Field spec = to_frequency(f);
  const Lattice& lat = spec.lattice();
  auto values = spec.values();
  for (int i = 0; i < lat.size(); ++i) {
    if (!keep(std::abs(lat.mode_at_index(i)))) values[i] = 0.0;
  }
  return f.is_physical() ? inverse_dft(spec) : spec;
}

}  // namespace

Field littlewood_paley_project(const Field& f, double N) {
  const Lattice& lat = f.lattice();
  require_scale(lat, N, "littlewood_paley_project");
  const double n_star = lowest_dyadic_scale(lat);
  const double m = lat.M();
  if (N == n_star) {
    // Complement of the shells 2N_* <= N' <= 1, i.e. |k| <= M N_*.
    return mask_modes(f, [&](int ak) { return ak <= m * n_star; });
  }
  return mask_modes(f, [&](int ak) { return ak > 0.5 * m * N && ak <= m * N; });
}

Field low_pass_project(const Field& f, double N) {
  const Lattice& lat = f.lattice();
  require_scale(lat, N, "low_pass_project");
  const double cutoff = lat.M() * N;
  return mask_modes(f, [&](int ak) { return ak <= cutoff; });
}

double sobolev_norm_h(const Field& f, double s) {
  const Field spec = to_frequency(f);
  const Lattice& lat = spec.lattice();
  auto values = spec.values();
  double sum = 0.0;
  for (int i = 0; i < lat.size(); ++i) {
    const double k = lat.mode_at_index(i);
    const double weight = s == 0.0 ? 1.0 : std::pow(1.0 + k * k, s);
    sum += weight * std::norm(values[i]);
  }
  return std::sqrt(sum / kTwoPi);
}

double lebesgue_norm_h(const Field& f, double p) {
  f.require(Representation::Physical, "lebesgue_norm_h");
  if (!(p >= 1.0)) {
    throw DomainError("lebesgue_norm_h: p must be >= 1, got " + std::to_string(p));
  }
  auto values = f.values();
  if (std::isinf(p)) {
    double m = 0.0;
    for (const auto& v : values) m = std::max(m, std::abs(v));
    return m;
  }
  double sum = 0.0;
  if (p == 2.0) {
    for (const auto& v : values) sum += std::norm(v);
    return std::sqrt(f.lattice().h() * sum);
  }
  for (const auto& v : values) sum += std::pow(std::abs(v), p);
  return std::pow(f.lattice().h() * sum, 1.0 / p);
}

double l2_norm_h(const Field& f) {
  return f.is_physical() ? lebesgue_norm_h(f, 2.0) : sobolev_norm_h(f, 0.0);
}

}  // namespace fdnls
