#include "fdnls/oracles.hpp"

#include <cmath>
#include <string>

#include "fdnls/errors.hpp"
#include "fdnls/spectral.hpp"

namespace fdnls {

void PlaneWaveSpec::validate() const {
  if (n == 0) throw DomainError("plane wave: mode n must be nonzero");
  if (!(std::abs(A) > 0.0)) throw DomainError("plane wave: |A| must be positive");
  if (!std::isfinite(s)) throw DomainError("plane wave: s must be finite");
}

double PlaneWaveSpec::amplitude() const {
  return std::abs(A) * std::pow(std::abs(n), -s);
}

double plane_wave_phase_continuum(const PlaneWaveSpec& spec, const ModelParams& params) {
  const double an = std::abs(spec.n);
  return std::pow(an, params.alpha) +
         params.mu * std::norm(spec.A) * std::pow(an, -2.0 * spec.s);
}

double plane_wave_phase_discrete(const PlaneWaveSpec& spec, const ModelParams& params,
                                 const Lattice& lattice) {
  const double an = std::abs(spec.n);
  const cplx S = cell_average_multiplier(lattice.h(), spec.n);
  return symbol_sigma_h(lattice, params.alpha, spec.n) +
         params.mu * std::norm(spec.A) * std::pow(an, -2.0 * spec.s) * std::norm(S);
}

ContinuumField plane_wave_continuum(const PlaneWaveSpec& spec, const ModelParams& params,
                                    double t, const Lattice& reference, int bandlimit) {
  spec.validate();
  params.validate();
  if (bandlimit < 0) bandlimit = ContinuumField::default_bandlimit(reference);
  if (std::abs(spec.n) > bandlimit) {
    throw ResolutionError("plane wave: |n| = " + std::to_string(std::abs(spec.n)) +
                          " exceeds reference bandlimit " + std::to_string(bandlimit));
  }
  const cplx c = kTwoPi * spec.A * std::pow(std::abs(spec.n), -spec.s) *
                 std::polar(1.0, -t * plane_wave_phase_continuum(spec, params));
  return ContinuumField::from_coefficients(
      reference, bandlimit, [&](int k) { return k == spec.n ? c : cplx{}; });
}

Field plane_wave_discrete(const PlaneWaveSpec& spec, const ModelParams& params,
                          const Lattice& lattice, double t) {
  spec.validate();
  params.validate();
  if (std::abs(spec.n) >= lattice.M()) {
    throw AliasingError("plane wave: |n| = " + std::to_string(std::abs(spec.n)) +
                        " is not below M = " + std::to_string(lattice.M()));
  }
  const cplx S = cell_average_multiplier(lattice.h(), spec.n);
  const cplx c = spec.A * std::pow(std::abs(spec.n), -spec.s) * S *
                 std::polar(1.0, -t * plane_wave_phase_discrete(spec, params, lattice));
  const int n = spec.n;
  return Field::from_function(lattice,
                              [&](double x) { return c * std::polar(1.0, n * x); });
}

ErrorCoefficients predicted_error_coefficients(const PlaneWaveSpec& spec,
                                               const ModelParams& params, double t) {
  spec.validate();
  const double a = std::abs(spec.A);
  const double an = std::abs(spec.n);
  const double s = spec.s;
  const double c_cont = std::sqrt(kPi / 2.0) * a * std::pow(an, 1.0 - s);
  const double bracket = params.alpha * std::pow(an, params.alpha + 2.0 * s) +
                         2.0 * params.mu * a * a;
  const double c_disc = std::sqrt(kTwoPi) / 24.0 * a * std::abs(t) *
                        std::pow(an, 2.0 - 3.0 * s) * std::abs(bracket);
  return {c_cont, c_disc};
}

int sharpness_mode(const Lattice& coarse, const ModelParams& params, double T) {
  const double a = params.alpha;
  const double k0 = std::pow(T, -1.0 / (2.0 + a)) * std::pow(coarse.h(), -2.0 / (2.0 + a));
  return static_cast<int>(std::floor(k0 + 0.5));
}

ContinuumField sharpness_initial_datum(const Lattice& coarse, const Lattice& reference,
                                       const ModelParams& params, double T, double eps,
                                       int bandlimit) {
  params.validate();
  if (!(eps > 0.0) || !(eps < 1.0 / std::sqrt(2.0))) {
    throw DomainError("sharpness datum: eps must lie in (0, 1/sqrt(2)), got " +
                      std::to_string(eps));
  }
  if (!(T > 0.0) || T > 1.0) {
    throw DomainError("sharpness datum: T must lie in (0, 1], got " + std::to_string(T));
  }
  if (bandlimit < 0) bandlimit = ContinuumField::default_bandlimit(reference);
  const int k0 = sharpness_mode(coarse, params, T);
  if (k0 > bandlimit) {
    throw ResolutionError("sharpness datum: k0 = " + std::to_string(k0) +
                          " exceeds reference bandlimit " + std::to_string(bandlimit));
  }
  const cplx c = kTwoPi * eps * std::pow(k0, -params.alpha / 2.0);
  return ContinuumField::from_coefficients(
      reference, bandlimit, [&](int k) { return k == k0 ? c : cplx{}; });
}

}  // namespace fdnls
