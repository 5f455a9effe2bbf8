#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "direct_oracles.hpp"
#include "fdnls/data.hpp"
#include "fdnls/dynamics.hpp"
#include "fdnls/errors.hpp"
#include "fdnls/fourier.hpp"
#include "fdnls/mi.hpp"
#include "fdnls/oracles.hpp"
#include "fdnls/spectral.hpp"

using namespace fdnls;

namespace {

Field smooth_random(const Lattice& lat, std::uint64_t seed, double amp = 1.0) {
  return sample_datum(RandomSobolevDatum{2.0, 0.05, amp, 6, seed}, lat);
}

SolverConfig cfg_of(double dt, double t_end, int stride = 1) {
  SolverConfig c;
  c.dt = dt;
  c.t_end = t_end;
  c.record_stride = stride;
  return c;
}

double rel_l2(const Field& a, const Field& b) { return l2_norm_h(a - b) / l2_norm_h(b); }

}  // namespace

TEST_CASE("solver config") {
  CHECK_THROWS_AS(cfg_of(0.0, 1.0).validate(), DomainError);
  CHECK_THROWS_AS(cfg_of(2.0, 1.0).validate(), DomainError);
  CHECK_THROWS_AS(cfg_of(0.1, 1.0, 0).validate(), DomainError);
  CHECK(cfg_of(0.1, 1.0).steps() == 10);
  CHECK(cfg_of(0.3, 1.0).steps() == 4);
  CHECK(cfg_of(0.3, 1.0).effective_dt() == doctest::Approx(0.25));
  CHECK(cfg_of(0.1, 0.0).steps() == 0);
  const Lattice lat(50);
  const ModelParams p{2.0, -1};
  CHECK(default_time_step(lat, p) == doctest::Approx(0.1 / std::pow(100.0 / kPi, 2)));
  CHECK(default_time_step(Lattice(1), ModelParams{0.5, 1}) == doctest::Approx(0.1));
}

TEST_CASE("discrete linear propagator") {
  const Lattice lat(32);
  const ModelParams p{1.5, -1};
  const Field f = smooth_random(lat, 3);
  CHECK(rel_l2(linear_propagate_discrete(f, 0.0, p), f) < 1e-15);
  for (int n : {1, -4, 13}) {
    const Field e = Field::from_function(lat, [n](double x) { return std::polar(1.0, n * x); });
    const double t = 0.37;
    const Field got = linear_propagate_discrete(e, t, p);
    const cplx phase = std::polar(1.0, -t * symbol_sigma_h(lat, 1.5, n));
    for (int j = -32; j < 32; ++j) CHECK(std::abs(got.at_site(j) - phase * e.at_site(j)) < 1e-13);
  }
  std::mt19937_64 rng(5);
  std::normal_distribution<double> g;
  std::vector<cplx> v(lat.size());
  for (auto& x : v) x = {g(rng), g(rng)};
  const Field r(lat, v, Representation::Physical);
  CHECK(l2_norm_h(linear_propagate_discrete(r, 12.3, p)) == doctest::Approx(l2_norm_h(r)).epsilon(1e-12));
  // Frequency input stays in frequency representation.
  CHECK(linear_propagate_discrete(forward_dft(r), 1.0, p).representation() == Representation::Frequency);
}

TEST_CASE("continuum linear propagator") {
  const Lattice ref(64);
  const ModelParams p{2.0, -1};
  PlaneWaveSpec spec;
  const auto u = make_continuum_datum(PlaneWaveDatum{spec}, ref);
  const auto same = linear_propagate_continuum(u, 0.0, p);
  CHECK(l2_torus_distance(same, u) < 1e-15);
  const auto flipped = linear_propagate_continuum(u, kPi, p);
  CHECK(std::abs(flipped.coefficient(1) + u.coefficient(1)) < 1e-13);
  const auto rnd = make_continuum_datum(RandomSobolevDatum{1.0, 0.05, 1.0, 20, 8}, ref);
  const auto moved = linear_propagate_continuum(rnd, 3.1, ModelParams{1.3, 1});
  CHECK(moved.sobolev_norm(1.5) == doctest::Approx(rnd.sobolev_norm(1.5)).epsilon(1e-12));
}

TEST_CASE("CW solution is reproduced at every record") {
  const Lattice lat(16);
  const ModelParams p{1.4, -1};
  const cplx A{0.8, 0.3};
  const Field u0 = Field::from_function(lat, [&](double) { return A; });
  const auto traj = evolve_nonlinear(u0, p, cfg_of(1e-2, 2.0, 10));
  REQUIRE(traj.times.size() == 21);
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    const cplx expect = A * std::polar(1.0, std::norm(A) * traj.times[i]);
    for (auto v : traj.snapshots[i].values()) CHECK(std::abs(v - expect) < 1e-12);
  }
}

TEST_CASE("plane wave tracks the exact lattice solution") {
  const Lattice lat(32);
  for (auto [alpha, mu] : {std::pair{2.0, -1}, std::pair{1.5, 1}}) {
    const ModelParams p{alpha, mu};
    PlaneWaveSpec spec{cplx{1.2, -0.4}, 3, 0.5};
    const Field u0 = plane_wave_discrete(spec, p, lat, 0.0);
    const auto traj = evolve_nonlinear(u0, p, cfg_of(1e-3, 1.0, 250));
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
      CHECK(rel_l2(traj.snapshots[i], plane_wave_discrete(spec, p, lat, traj.times[i])) < 1e-10);
    }
  }
}

TEST_CASE("mass is conserved to roundoff") {
  const Lattice lat(64);
  for (auto [alpha, mu] : {std::pair{2.0, -1}, std::pair{1.2, 1}, std::pair{0.7, -1}}) {
    const ModelParams p{alpha, mu};
    const auto traj = evolve_nonlinear(smooth_random(lat, 9, 0.5), p, cfg_of(1e-3, 1.0, 100),
                                       RecordOptions{false, {}});
    const double m0 = traj.log.mass.front();
    for (double m : traj.log.mass) CHECK(std::abs(m - m0) <= 1e-11 * m0);
  }
}

TEST_CASE("energy drift and self-convergence are second order") {
  const Lattice lat(32);
  const ModelParams p{1.6, -1};
  const Field u0 = smooth_random(lat, 12, 0.6);
  std::vector<double> drift;
  std::vector<Field> finals;
  for (double dt : {0.02, 0.01, 0.005, 0.0025}) {
    const auto traj = evolve_nonlinear(u0, p, cfg_of(dt, 1.0, 1000000), RecordOptions{false, {}});
    drift.push_back(std::abs(traj.log.energy.back() - traj.log.energy.front()));
    finals.push_back(traj.final_state);
  }
  for (std::size_t i = 1; i < drift.size(); ++i) {
    const double r = drift[i - 1] / drift[i];
    CHECK(r >= 3.5);
    CHECK(r <= 4.5);
  }
  std::vector<double> ldt, ldiff;
  const double dts[] = {0.02, 0.01, 0.005};
  for (int i = 0; i < 3; ++i) {
    ldt.push_back(std::log(dts[i]));
    ldiff.push_back(std::log(l2_norm_h(finals[i] - finals[i + 1])));
  }
  const double order = oracle::lsq_slope(ldt, ldiff);
  CHECK(order >= 1.9);
  CHECK(order <= 2.1);
}

TEST_CASE("energy functional agrees between monitor and standalone evaluation") {
  const Lattice lat(32);
  const ModelParams p{1.3, -1};
  const Field u0 = smooth_random(lat, 2);
  const auto traj = evolve_nonlinear(u0, p, cfg_of(0.01, 0.5, 10));
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    CHECK(traj.log.energy[i] == doctest::Approx(discrete_energy(traj.snapshots[i], p)).epsilon(1e-12));
    CHECK(traj.log.mass[i] == doctest::Approx(discrete_mass(traj.snapshots[i])).epsilon(1e-12));
  }
  // H_h for a constant: only the quartic term survives.
  const Field c = Field::from_function(lat, [](double) { return cplx{2.0, 0.0}; });
  CHECK(discrete_energy(c, p) == doctest::Approx(-0.25 * 16 * kTwoPi));
}

TEST_CASE("records and observers") {
  const Lattice lat(8);
  const ModelParams p;
  int calls = 0;
  double last = -1;
  RecordOptions ro{false, [&](const SnapshotView& s) {
                     ++calls;
                     CHECK(s.time > last);
                     last = s.time;
                     CHECK(s.physical.size() == 16);
                   }};
  const auto traj = evolve_nonlinear(smooth_random(lat, 1), p, cfg_of(0.1, 1.05, 3), ro);
  // steps = 11: records at 0, 3, 6, 9 and the final step
  CHECK(calls == 5);
  CHECK(traj.snapshots.empty());
  CHECK(traj.times.back() == doctest::Approx(1.05));
}

TEST_CASE("record cadence does not change the trajectory") {
  const Lattice lat(16);
  const ModelParams p{1.8, -1};
  const Field u0 = smooth_random(lat, 4);
  const auto a = evolve_nonlinear(u0, p, cfg_of(0.01, 1.0, 1), RecordOptions{false, {}});
  const auto b = evolve_nonlinear(u0, p, cfg_of(0.01, 1.0, 100), RecordOptions{false, {}});
  CHECK(l2_norm_h(a.final_state - b.final_state) < 1e-13);
}

TEST_CASE("defocusing runs never raise the blow-up diagnostic") {
  const Lattice lat(32);
  const ModelParams p{1.5, 1};
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    CHECK_NOTHROW(evolve_nonlinear(smooth_random(lat, seed, 5.0), p, cfg_of(1e-3, 1.0, 1000),
                                   RecordOptions{false, {}}));
  }
}

TEST_CASE("non-finite data abort with the blow-up time") {
  const Lattice lat(8);
  Field u(lat, Representation::Physical);
  u.values()[3] = std::numeric_limits<double>::quiet_NaN();
  try {
    evolve_nonlinear(u, ModelParams{}, cfg_of(0.1, 1.0));
    FAIL("expected BlowUpError");
  } catch (const BlowUpError& e) {
    CHECK(e.time() == 0.0);
  }
  Field big = Field::from_function(lat, [](double) { return cplx{2e8, 0}; });
  CHECK_THROWS_AS(evolve_nonlinear(big, ModelParams{}, cfg_of(0.1, 1.0)), BlowUpError);
}

TEST_CASE("continuum evolution conserves mass and keeps the bandlimit") {
  const Lattice ref(64);
  const ModelParams p{1.7, -1};
  const auto u0 = make_continuum_datum(RandomSobolevDatum{1.0, 0.05, 0.5, 10, 6}, ref);
  const auto traj = evolve_nonlinear(u0, p, cfg_of(1e-3, 0.5, 100));
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    CHECK(traj.log.mass[i] == doctest::Approx(traj.log.mass.front()).epsilon(1e-12));
    for (int k = -64; k < 64; ++k) {
      if (std::abs(k) > u0.bandlimit()) CHECK(traj.snapshots[i].spectrum().at_mode(k) == cplx{});
    }
  }
  // The plane wave is an exact solution of the torus scheme too.
  PlaneWaveSpec spec{cplx{0.5, 0.5}, 2, 1.0};
  const auto pw = evolve_nonlinear(make_continuum_datum(PlaneWaveDatum{spec}, ref), p, cfg_of(0.01, 1.0));
  CHECK(l2_torus_distance(pw.final_state, plane_wave_continuum(spec, p, 1.0, ref)) < 1e-12);
}
