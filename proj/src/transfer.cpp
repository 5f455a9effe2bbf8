#include "fdnls/transfer.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fdnls/errors.hpp"
#include "fdnls/fourier.hpp"
#include "fdnls/spectral.hpp"

namespace fdnls {

ContinuumField::ContinuumField(Field values, int bandlimit)
    : spectrum_(to_frequency(values)), bandlimit_(bandlimit) {
  const int m_ref = spectrum_.lattice().M();
  if (bandlimit < 0 || bandlimit >= m_ref) {
    throw DomainError("continuum bandlimit " + std::to_string(bandlimit) +
                      " must lie in [0, M_ref) with M_ref = " +
                      std::to_string(m_ref));
  }
  truncate();
}

ContinuumField ContinuumField::from_coefficients(
    const Lattice& reference, int bandlimit, const std::function<cplx(int)>& uhat) {
  Field spec(reference, Representation::Frequency);
  const int kmax = std::min(bandlimit, reference.M() - 1);
  for (int k = -kmax; k <= kmax; ++k) spec.mode(k) = uhat(k);
  return ContinuumField(std::move(spec), bandlimit);
}

ContinuumField ContinuumField::zero(const Lattice& reference, int bandlimit) {
  return ContinuumField(Field(reference, Representation::Frequency), bandlimit);
}

int ContinuumField::default_bandlimit(const Lattice& reference) {
  return std::max(0, reference.M() / 2 - 1);
}

Field ContinuumField::samples() const { return inverse_dft(spectrum_); }

cplx ContinuumField::coefficient(long k) const {
  if (k < -bandlimit_ || k > bandlimit_) return 0.0;
  return spectrum_.at_mode(static_cast<int>(k));
}

double ContinuumField::l2_norm() const { return sobolev_norm_h(spectrum_, 0.0); }

double ContinuumField::sobolev_norm(double s) const {
  return sobolev_norm_h(spectrum_, s);
}

void ContinuumField::truncate() {
  const Lattice& lat = spectrum_.lattice();
  auto values = spectrum_.values();
  for (int i = 0; i < lat.size(); ++i) {
    if (std::abs(lat.mode_at_index(i)) > bandlimit_) values[i] = 0.0;
  }
}

cplx cell_average_multiplier(double h, double k) {
  if (k == 0.0) return 1.0;
  // (e^{i theta} - 1)/(i theta) = (sin(theta/2)/(theta/2)) e^{i theta/2}
  const double half = 0.5 * h * k;
  return std::sin(half) / half * std::polar(1.0, half);
}

Field discretize_dh(const ContinuumField& f, const Lattice& coarse) {
  const int m_ref = f.reference().M();
  if (m_ref % coarse.M() != 0) {
    throw DomainError("discretize_dh: reference M = " + std::to_string(m_ref) +
                      " is not a multiple of coarse M = " +
                      std::to_string(coarse.M()));
  }
  const double h = coarse.h();
  Field spec(coarse, Representation::Frequency);
  const int kmax = f.bandlimit();
  for (int k = -kmax; k <= kmax; ++k) {
    const cplx c = f.coefficient(k);
    if (c == 0.0) continue;
    spec.mode(coarse.wrap_mode(k)) += c * cell_average_multiplier(h, k);
  }
  return inverse_dft(spec);
}

double interpolation_multiplier(const Lattice& lattice, long k) {
  if (k == 0) return 1.0;
  const double half = 0.5 * lattice.h() * static_cast<double>(k);
  const double sinc = std::sin(half) / half;
  return sinc * sinc;
}

Field interpolate_ph(const Field& g, const Lattice& target) {
  const Field coarse_values = to_physical(g);
  const Lattice& coarse = coarse_values.lattice();
  if (target.M() % coarse.M() != 0) {
    throw DomainError("interpolate_ph: target M = " + std::to_string(target.M()) +
                      " is not a multiple of coarse M = " +
                      std::to_string(coarse.M()));
  }
  const int ratio = target.M() / coarse.M();
  auto gv = coarse_values.values();
  const int n = coarse.size();
  Field out(target, Representation::Physical);
  auto ov = out.values();
  for (int i = 0; i < target.size(); ++i) {
    // fine site j_f = i - M_ref sits at coarse coordinate j_f / ratio
    const int jf = i - target.M();
    const int j0 = (jf >= 0) ? jf / ratio : -((-jf + ratio - 1) / ratio);
    const double frac = static_cast<double>(jf - j0 * ratio) / ratio;
    const int i0 = coarse.index_of_site(j0);
    const int i1 = (i0 + 1) % n;
    ov[i] = gv[i0] + (gv[i1] - gv[i0]) * frac;
  }
  return out;
}

ContinuumField interpolate_ph_spectral(const Field& g, const Lattice& reference,
                                       int bandlimit) {
  const Field spec = to_frequency(g);
  const Lattice& coarse = spec.lattice();
  return ContinuumField::from_coefficients(reference, bandlimit, [&](int k) {
    return interpolation_multiplier(coarse, k) * spec.at_mode(coarse.wrap_mode(k));
  });
}

namespace {

void require_fine_enough(const Lattice& coarse, const Lattice& reference,
                         const char* who) {
  if (reference.M() < 8 * coarse.M()) {
    throw DomainError(std::string(who) + ": reference M = " +
                      std::to_string(reference.M()) +
                      " must be at least 8 times the coarse M = " +
                      std::to_string(coarse.M()));
  }
}

}  // namespace

double l2_torus_error(const Field& g, const ContinuumField& u) {
  const Field spec = to_frequency(g);
  const Lattice& coarse = spec.lattice();
  require_fine_enough(coarse, u.reference(), "l2_torus_error");
  const int kmax = u.bandlimit();
  double sum = 0.0;
  for (int k = -kmax; k <= kmax; ++k) {
    const cplx interp =
        interpolation_multiplier(coarse, k) * spec.at_mode(coarse.wrap_mode(k));
    sum += std::norm(interp - u.coefficient(k));
  }
  return std::sqrt(sum / kTwoPi);
}

double l2_torus_error_quadrature(const Field& g, const ContinuumField& u) {
  require_fine_enough(g.lattice(), u.reference(), "l2_torus_error_quadrature");
  Field diff = interpolate_ph(g, u.reference());
  diff -= u.samples();
  return lebesgue_norm_h(diff, 2.0);
}

double l2_torus_distance(const ContinuumField& u, const ContinuumField& v) {
  const int kmax = std::max(u.bandlimit(), v.bandlimit());
  double sum = 0.0;
  for (int k = -kmax; k <= kmax; ++k) {
    sum += std::norm(u.coefficient(k) - v.coefficient(k));
  }
  return std::sqrt(sum / kTwoPi);
}

}  // namespace fdnls
