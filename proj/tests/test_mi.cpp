#include <doctest.h>

#include <cmath>
#include <set>

#include "fdnls/errors.hpp"
#include "fdnls/mi.hpp"
#include "fdnls/spectral.hpp"

using namespace fdnls;

namespace {

double sigma_by_hand(double h, double alpha, int k) {
  return std::pow(std::abs(2.0 / h * std::sin(h * k / 2.0)), alpha);
}

std::set<int> unstable_by_hand(const Lattice& lat, double alpha, int mu, double A) {
  std::set<int> out;
  for (int k = -lat.M(); k < lat.M(); ++k) {
    const double s = sigma_by_hand(lat.h(), alpha, k);
    if (s * (s + 2.0 * mu * A * A) < 0.0) out.insert(k);
  }
  return out;
}

}  // namespace

TEST_CASE("unstable set matches pointwise evaluation") {
  const Lattice lat(5);
  for (double alpha : {0.5, 1.0, 1.5, 2.0}) {
    for (double A : {0.1, 0.5, 1.0 / std::sqrt(2.0), 1.3, 2.0, 4.0}) {
      for (int mu : {-1, 1}) {
        const MIReport r = mi_dispersion(lat, ModelParams{alpha, mu}, A);
        const std::set<int> got(r.unstable_set.begin(), r.unstable_set.end());
        CHECK(got == unstable_by_hand(lat, alpha, mu, A));
        if (mu == 1) CHECK(got.empty());
        for (std::size_t i = 0; i < r.modes.size(); ++i) {
          const int k = r.modes[i];
          CHECK(r.omega_sq[i] == doctest::Approx(mi_omega_sq(lat, {alpha, mu}, A, k)));
          CHECK(in_instability_region(lat, {alpha, mu}, A, k) == got.count(k) > 0);
          if (!got.count(k)) CHECK(r.gain[i] == 0.0);
          CHECK(r.gain[i] <= r.omega_max);
        }
      }
    }
  }
}

TEST_CASE("region at A = 1/sqrt(2) does not depend on alpha") {
  for (int M : {5, 16, 50}) {
    const Lattice lat(M);
    const double A = 1.0 / std::sqrt(2.0);
    const MIReport base = mi_dispersion(lat, ModelParams{2.0, -1}, A);
    for (double alpha : {0.5, 1.0, 1.5}) {
      CHECK(mi_dispersion(lat, ModelParams{alpha, -1}, A).unstable_set == base.unstable_set);
    }
  }
}

TEST_CASE("saturated regime example") {
  const Lattice lat(5);
  const MIReport r = mi_dispersion(lat, ModelParams{2.0, -1}, 4.0);
  CHECK(r.regime == MIRegime::LatticeSaturated);
  const double S = std::pow(10.0 / kPi, 2);
  CHECK(r.omega_max == doctest::Approx(std::sqrt((32.0 - S) * S)).epsilon(1e-12));
  CHECK(r.omega_max == doctest::Approx(14.885).epsilon(1e-4));
  CHECK(r.k_max == 5);
  CHECK(std::isnan(r.xi_m));
}

TEST_CASE("interior regime example") {
  const Lattice lat(50);
  const MIReport r = mi_dispersion(lat, ModelParams{2.0, -1}, 1.0);
  CHECK(r.regime == MIRegime::Interior);
  CHECK(r.xi_m == doctest::Approx(1.0002).epsilon(1e-4));
  CHECK(r.k_max == 1);
  CHECK(r.gain_at(1) == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(r.omega_m_prime == doctest::Approx(1.0));
}

TEST_CASE("gain branches meet at the crossover") {
  const double h = kPi / 5.0;
  for (double alpha : {1.0, 1.5, 2.0}) {
    const double A = std::pow(2.0 / h, alpha / 2.0);
    CHECK(std::abs(max_gain_saturated(h, alpha, A) - max_gain_interior(A)) < 1e-12 * A * A);
    CHECK(max_gain_theory(h, alpha, 0.5 * A) == doctest::Approx(0.25 * A * A));
    const double big = 4.0 * A;
    CHECK(max_gain_theory(h, alpha, big) ==
          doctest::Approx(max_gain_saturated(h, alpha, big)));
  }
}

TEST_CASE("cw spec validation") {
  const Lattice lat(8);
  CWSpec cw;
  cw.modes = {{1, {1.0, 0.0}}};
  CHECK_NOTHROW(cw.validate(lat));
  cw.eps = 0.05;
  CHECK_THROWS_AS(cw.validate(lat), DomainError);
  cw.eps = 1e-3;
  cw.modes = {{8, {1.0, 0.0}}};
  CHECK_THROWS_AS(cw.validate(lat), DomainError);
  cw.modes = {{1, {0.5, 0.0}}};
  CHECK_THROWS_AS(cw.validate(lat), DomainError);
}

TEST_CASE("sideband growth follows linear theory and the defocusing control is stable") {
  const Lattice lat(50);
  CWSpec cw;
  cw.A = 1.0;
  cw.eps = 1e-6;
  cw.modes = {{1, {1.0, 0.0}}, {-1, {1.0, 0.0}}};
  SolverConfig cfg;
  cfg.dt = 1e-3;
  cfg.t_end = 9.5;
  cfg.record_stride = 50;
  const auto g = measure_sideband_growth(cw, ModelParams{2.0, -1}, lat, cfg, {1, 3});
  REQUIRE(g.size() == 2);
  const double G1 = mi_dispersion(lat, ModelParams{2.0, -1}, 1.0).gain_at(1);
  CHECK(g[0].status == GrowthStatus::Growing);
  CHECK(g[0].slope == doctest::Approx(G1).epsilon(0.05));
  CHECK(g[1].status == GrowthStatus::Stable);

  cfg.t_end = 4.0;
  const auto c = measure_sideband_growth(cw, ModelParams{2.0, 1}, lat, cfg, {1, 2});
  for (const auto& s : c) CHECK(s.status == GrowthStatus::Stable);
}

TEST_CASE("recurrence diagnostic on synthetic data") {
  std::vector<double> t, sup;
  for (int i = 0; i <= 1000; ++i) {
    const double x = 0.01 * i;
    t.push_back(x);
    // Peaks of height 3 at x = 2, 4, 6, 8 on a baseline of 1.
    const double d = std::remainder(x, 2.0);
    sup.push_back(x < 1.0 ? 1.0 : 1.0 + 2.0 * std::exp(-50.0 * d * d));
  }
  const RecurrenceReport r = recurrence_diagnostic(t, sup, 1.0);
  CHECK(r.localized);
  CHECK(r.first_localization_time == doctest::Approx(1.9).epsilon(0.02));
  REQUIRE(r.recurrence_times.size() == 4);
  CHECK(r.recurrence_times[0] == doctest::Approx(2.0));
  CHECK(r.recurrence_times[3] == doctest::Approx(8.0));
  CHECK(r.irregularity_index == doctest::Approx(0.0).epsilon(1e-9));

  const RecurrenceReport flat = recurrence_diagnostic(t, std::vector<double>(t.size(), 1.0), 1.0);
  CHECK_FALSE(flat.localized);
  CHECK(std::isnan(flat.first_localization_time));
  CHECK(std::isnan(flat.irregularity_index));
}

TEST_CASE("instability mask agrees with the dispersion relation") {
  const Lattice lat(5);
  const std::vector<double> xi{0.0, 0.5, 1.0, 2.5, 5.0};
  const std::vector<double> A{0.3, 1.0, 3.0};
  const auto mask = instability_mask(lat, ModelParams{1.5, -1}, xi, A);
  for (std::size_t a = 0; a < A.size(); ++a) {
    for (std::size_t i = 0; i < xi.size(); ++i) {
      const double s = std::pow(std::abs(2.0 / lat.h() * std::sin(lat.h() * xi[i] / 2.0)), 1.5);
      const bool expect = xi[i] != 0.0 && s * (s - 2.0 * A[a] * A[a]) < 0.0;
      CHECK(mask[a][i] == expect);
    }
  }
}
