#include <doctest.h>

#include <cmath>

#include "direct_oracles.hpp"
#include "fdnls/errors.hpp"
#include "fdnls/fourier.hpp"
#include "fdnls/oracles.hpp"
#include "fdnls/spectral.hpp"

using namespace fdnls;

namespace {

// Phase written out by hand, kept apart from the library formulas.
double phase_by_hand(cplx A, int n, double s, double alpha, int mu) {
  const double an = std::abs(n);
  return std::pow(an, alpha) + mu * std::norm(A) * std::pow(an, -2.0 * s);
}

}  // namespace

TEST_CASE("plane wave spec validation") {
  CHECK_THROWS_AS((PlaneWaveSpec{{1.0, 0.0}, 0, 0.0}.validate()), DomainError);
  CHECK_NOTHROW((PlaneWaveSpec{{1.0, 0.0}, -3, 0.5}.validate()));
  CHECK(PlaneWaveSpec{{0.0, 2.0}, 4, 0.5}.amplitude() == doctest::Approx(1.0));
}

TEST_CASE("continuum plane wave solves the equation") {
  const Lattice ref(64);
  for (auto [alpha, mu] : {std::pair{2.0, 1}, std::pair{1.5, -1}, std::pair{0.7, 1}}) {
    const ModelParams p{alpha, mu};
    const PlaneWaveSpec spec{{0.6, 0.8}, 3, 0.5};
    const double phi = phase_by_hand(spec.A, 3, 0.5, alpha, mu);
    CHECK(plane_wave_phase_continuum(spec, p) == doctest::Approx(phi).epsilon(1e-14));
    const double t = 0.73;
    const Field u = plane_wave_continuum(spec, p, t, ref).samples();
    const Lattice& lat = u.lattice();
    const cplx a0 = spec.A * std::pow(3.0, -0.5);
    for (int j = -64; j < 64; ++j) {
      const double x = lat.site(j);
      CHECK(std::abs(u.at_site(j) - a0 * std::polar(1.0, 3 * x - t * phi)) < 1e-12);
    }
    // i u_t - (-Lap)^{alpha/2} u - mu |u|^2 u with u_t from a fourth-order
    // time difference and the fractional Laplacian applied by hand on modes.
    const double d = 1e-3;
    auto sample = [&](double tt) { return plane_wave_continuum(spec, p, tt, ref).samples(); };
    const Field up2 = sample(t + 2 * d), up1 = sample(t + d);
    const Field um1 = sample(t - d), um2 = sample(t - 2 * d);
    const Field uh = forward_dft(u);
    Field lap(ref, Representation::Frequency);
    for (int k = -64; k < 64; ++k) lap.mode(k) = std::pow(std::abs(k), alpha) * uh.at_mode(k);
    const Field lap_x = inverse_dft(lap);
    double worst = 0.0;
    for (int j = -64; j < 64; ++j) {
      const cplx ut = (-up2.at_site(j) + 8.0 * up1.at_site(j) - 8.0 * um1.at_site(j) +
                       um2.at_site(j)) / (12.0 * d);
      const cplx v = u.at_site(j);
      const cplx r = cplx{0, 1} * ut - lap_x.at_site(j) - double(mu) * std::norm(v) * v;
      worst = std::max(worst, std::abs(r));
    }
    CHECK(worst < 1e-8);
  }
}

TEST_CASE("continuum plane wave respects the bandlimit") {
  const Lattice ref(16);
  CHECK_THROWS_AS(plane_wave_continuum(PlaneWaveSpec{{1, 0}, 8}, {}, 0.1, ref), ResolutionError);
  CHECK_THROWS_AS(plane_wave_continuum(PlaneWaveSpec{{1, 0}, 3}, {}, 0.1, ref, 2),
                  ResolutionError);
  const ContinuumField ok = plane_wave_continuum(PlaneWaveSpec{{1, 0}, -7}, {}, 0.0, ref);
  CHECK(std::abs(ok.coefficient(-7) - cplx{2 * kPi, 0}) < 1e-12);
}

TEST_CASE("discrete plane wave starts from the cell average and solves the lattice equation") {
  const Lattice lat(24);
  const double h = lat.h();
  for (auto [alpha, mu] : {std::pair{2.0, -1}, std::pair{1.2, 1}}) {
    const ModelParams p{alpha, mu};
    const PlaneWaveSpec spec{{1.0, 0.5}, -5, 0.25};
    const cplx a0 = spec.A * std::pow(5.0, -0.25);
    const Field u0 = plane_wave_discrete(spec, p, lat, 0.0);
    for (int j = -24; j < 24; ++j) {
      const cplx avg = oracle::cell_average(
          [&](double x) { return a0 * std::polar(1.0, -5.0 * x); }, lat.site(j), h);
      CHECK(std::abs(u0.at_site(j) - avg) < 1e-12);
    }
    const double sig = std::pow(std::abs(2.0 / h * std::sin(-5.0 * h / 2.0)), alpha);
    const double amp2 = std::norm(u0.at_site(0));
    const double phi = sig + mu * amp2;
    CHECK(plane_wave_phase_discrete(spec, p, lat) == doctest::Approx(phi).epsilon(1e-13));
    const double t = 1.3;
    const Field ut = plane_wave_discrete(spec, p, lat, t);
    for (int j = -24; j < 24; ++j) {
      CHECK(std::abs(ut.at_site(j) - std::polar(1.0, -t * phi) * u0.at_site(j)) < 1e-12);
    }
  }
  CHECK_THROWS_AS(plane_wave_discrete(PlaneWaveSpec{{1, 0}, 24}, {}, lat, 0.1), AliasingError);
  CHECK_THROWS_AS(plane_wave_discrete(PlaneWaveSpec{{1, 0}, -25}, {}, lat, 0.1), AliasingError);
}

TEST_CASE("error coefficients") {
  const PlaneWaveSpec unit{{1.0, 0.0}, 1, 0.0};
  const auto c = predicted_error_coefficients(unit, ModelParams{2.0, 1}, 1.0);
  CHECK(c.c_continuum == doctest::Approx(std::sqrt(kPi / 2.0)).epsilon(1e-14));
  CHECK(c.c_discrete == doctest::Approx(0.41783).epsilon(1e-4));
  const auto degenerate = predicted_error_coefficients(unit, ModelParams{2.0, -1}, 1.0);
  CHECK(degenerate.c_discrete == doctest::Approx(0.0));
  const auto scaled = predicted_error_coefficients(PlaneWaveSpec{{2.0, 0.0}, 4, 1.0},
                                                   ModelParams{1.5, 1}, 0.5);
  CHECK(scaled.c_continuum == doctest::Approx(std::sqrt(kPi / 2.0) * 2.0));
}

TEST_CASE("continuum-side error of a single mode is sqrt(pi/2) h") {
  // ||p_h d_h e^{ix} - e^{ix}||_{L^2(T)} / h tends to sqrt(pi/2).
  const ModelParams p{2.0, 1};
  for (int M : {64, 256}) {
    const Lattice coarse(M), ref(8 * M);
    const ContinuumField u = plane_wave_continuum(PlaneWaveSpec{}, p, 0.0, ref);
    const double err = l2_torus_error(discretize_dh(u, coarse), u);
    CHECK(err / coarse.h() == doctest::Approx(std::sqrt(kPi / 2.0)).epsilon(2.0 / M));
  }
}

TEST_CASE("sharpness datum") {
  const ModelParams p{2.0, -1};
  const Lattice coarse(64), ref(512);
  CHECK(sharpness_mode(coarse, p, 1.0) == 5);
  CHECK(sharpness_mode(Lattice(1024), p, 1.0) == 18);
  const ContinuumField u = sharpness_initial_datum(coarse, ref, p, 1.0, 0.3);
  const double norm = u.sobolev_norm(1.0);
  const double target = 0.3 * std::sqrt(2.0 * kPi);
  CHECK(norm >= 0.9 * target);
  CHECK(norm <= 1.1 * target);
  CHECK(std::abs(u.coefficient(5)) == doctest::Approx(2 * kPi * 0.3 / 5.0));
  CHECK_THROWS_AS(sharpness_initial_datum(coarse, ref, p, 1.0, 0.0), DomainError);
  CHECK_THROWS_AS(sharpness_initial_datum(coarse, ref, p, 1.0, 0.71), DomainError);
  CHECK_THROWS_AS(sharpness_initial_datum(coarse, ref, p, 1.5, 0.3), DomainError);
  CHECK_THROWS_AS(sharpness_initial_datum(coarse, Lattice(8), p, 1.0, 0.3), ResolutionError);
}
