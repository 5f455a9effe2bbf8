#pragma once

#include <functional>

#include "fdnls/field.hpp"

namespace fdnls {

/// Bandlimited function on the torus, stored as its Fourier coefficients
/// u_hat(k) = int u(x) e^{-ikx} dx on a fine reference lattice. Every mode with
/// |k| > bandlimit is identically zero; on the reference lattice the discrete
/// transform of the samples reproduces u_hat exactly.
class ContinuumField {
 public:
  /// Wraps a field on the reference lattice and truncates it at `bandlimit`.
  ContinuumField(Field values, int bandlimit);

  static ContinuumField from_coefficients(const Lattice& reference, int bandlimit,
                                          const std::function<cplx(int)>& uhat);
  static ContinuumField zero(const Lattice& reference, int bandlimit);

  /// K_ref = M_ref / 2 - 1, the largest cutoff that keeps the cubic term free
  /// of aliasing on the reference lattice.
  static int default_bandlimit(const Lattice& reference);

  const Lattice& reference() const noexcept { return spectrum_.lattice(); }
  int bandlimit() const noexcept { return bandlimit_; }

  const Field& spectrum() const noexcept { return spectrum_; }
  Field& spectrum_mut() noexcept { return spectrum_; }
  Field samples() const;

  /// u_hat(k); zero beyond the bandlimit.
  cplx coefficient(long k) const;

  double l2_norm() const;
  double sobolev_norm(double s) const;

  /// Re-applies the bandlimit after the spectrum was modified in place.
  void truncate();

 private:
  Field spectrum_;
  int bandlimit_;
};

/// (e^{ihk} - 1) / (ihk), the cell-average multiplier of d_h; 1 at k = 0.
cplx cell_average_multiplier(double h, double k);

/// d_h f(x) = h^{-1} int_x^{x+h} f, computed spectrally with the full alias
/// sum over the bandlimited coefficients. Returns a Physical field.
Field discretize_dh(const ContinuumField& f, const Lattice& coarse);

/// P_h(k) = (sin(hk/2) / (hk/2))^2, with P_h(0) = 1; k ranges over all of Z.
double interpolation_multiplier(const Lattice& lattice, long k);

/// Piecewise-linear interpolant p_h g sampled at every site of `target`.
/// target.M() must be a multiple of g.lattice().M().
Field interpolate_ph(const Field& g, const Lattice& target);

/// Exact Fourier coefficients P_h(k) F_h g(k) of p_h g for |k| <= bandlimit.
ContinuumField interpolate_ph_spectral(const Field& g, const Lattice& reference,
                                       int bandlimit);

/// ||p_h g - u||_{L^2(T)} evaluated on the Fourier side over |k| <= K_ref.
double l2_torus_error(const Field& g, const ContinuumField& u);

/// Cross-check path: fine-grid quadrature of |p_h g - u|^2.
double l2_torus_error_quadrature(const Field& g, const ContinuumField& u);

/// ||u - v||_{L^2(T)} between two continuum fields (any reference lattices).
double l2_torus_distance(const ContinuumField& u, const ContinuumField& v);

}  // namespace fdnls
