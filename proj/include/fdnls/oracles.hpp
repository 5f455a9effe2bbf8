#pragma once

#include "fdnls/field.hpp"
#include "fdnls/lattice.hpp"
#include "fdnls/transfer.hpp"

namespace fdnls {

/// u_0(x) = A |n|^{-s} e^{inx}.
struct PlaneWaveSpec {
  cplx A{1.0, 0.0};
  int n = 1;
  double s = 0.0;

  void validate() const;
  double amplitude() const;  // |A| |n|^{-s}
};

/// Continuum phase |n|^alpha + mu |A|^2 |n|^{-2s}.
double plane_wave_phase_continuum(const PlaneWaveSpec& spec, const ModelParams& params);
/// Lattice phase sigma_h(n) + mu |A|^2 |n|^{-2s} |S_h(n)|^2, S_h = (e^{ihn}-1)/(ihn).
double plane_wave_phase_discrete(const PlaneWaveSpec& spec, const ModelParams& params,
                                 const Lattice& lattice);

/// Exact torus solution at time t, stored on `reference` with the given
/// bandlimit (default K_ref). Throws ResolutionError if |n| exceeds it.
ContinuumField plane_wave_continuum(const PlaneWaveSpec& spec, const ModelParams& params,
                                    double t, const Lattice& reference,
                                    int bandlimit = -1);

/// Exact lattice solution started from d_h u_0. |n| >= M throws AliasingError.
Field plane_wave_discrete(const PlaneWaveSpec& spec, const ModelParams& params,
                          const Lattice& lattice, double t);

struct ErrorCoefficients {
  double c_continuum;  // sqrt(pi/2) |A| |n|^{1-s}
  double c_discrete;   // sqrt(2 pi)/24 |A| t |n|^{2-3s} |alpha |n|^{alpha+2s} + 2 mu |A|^2|
};

ErrorCoefficients predicted_error_coefficients(const PlaneWaveSpec& spec,
                                               const ModelParams& params, double t);

/// k_0 = T^{-1/(2+alpha)} h^{-2/(2+alpha)}, rounded to nearest with ties up.
int sharpness_mode(const Lattice& coarse, const ModelParams& params, double T);

/// u_0 = eps k_0^{-alpha/2} e^{i k_0 x} on the reference lattice.
/// Requires 0 < eps < 1/sqrt(2) and T in (0,1].
ContinuumField sharpness_initial_datum(const Lattice& coarse, const Lattice& reference,
                                       const ModelParams& params, double T, double eps,
                                       int bandlimit = -1);

}  // namespace fdnls
