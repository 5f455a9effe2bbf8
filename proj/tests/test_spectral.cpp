#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "direct_oracles.hpp"
#include "fdnls/errors.hpp"
#include "fdnls/fourier.hpp"
#include "fdnls/spectral.hpp"

using namespace fdnls;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Field random_field(const Lattice& lat, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  std::vector<cplx> v(lat.size());
  for (auto& x : v) x = {g(rng), g(rng)};
  return Field(lat, v, Representation::Physical);
}

double max_abs_diff(std::span<const cplx> a, std::span<const cplx> b) {
  double m = 0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

double max_abs(std::span<const cplx> a) {
  double m = 0;
  for (auto v : a) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace

TEST_CASE("lattice geometry") {
  const Lattice lat(8);
  CHECK(lat.h() * lat.M() == doctest::Approx(kPi).epsilon(1e-15));
  CHECK(lat.size() == 16);
  CHECK(lat.site_at_index(0) == doctest::Approx(-kPi));
  CHECK(lat.mode_at_index(15) == 7);
  CHECK(lat.wrap_mode(8) == -8);
  CHECK(lat.wrap_mode(-9) == 7);
  CHECK_THROWS_AS(Lattice(0), DomainError);
}

TEST_CASE("model params ranges") {
  CHECK_NOTHROW(ModelParams{2.0, -1}.validate());
  CHECK_THROWS_AS((ModelParams{2.5, -1}.validate()), DomainError);
  CHECK_THROWS_AS((ModelParams{1.5, 0}.validate()), DomainError);
  CHECK_THROWS_AS((ModelParams{1.0, 1}.require_dispersive_range("test")), DomainError);
  CHECK_NOTHROW((ModelParams{1.2, 1}.require_dispersive_range("test")));
}

TEST_CASE("forward transform of constant and pure modes") {
  const Lattice lat(16);
  const Field one = Field::from_function(lat, [](double) { return cplx{1.0, 0.0}; });
  const Field F = forward_dft(one);
  for (int k = -16; k < 16; ++k) {
    CHECK(std::abs(F.at_mode(k) - (k == 0 ? kTwoPi : 0.0)) < 1e-12);
  }
  for (int n : {-15, -3, 1, 7, 15}) {
    const Field e = Field::from_function(lat, [n](double x) { return std::polar(1.0, n * x); });
    const Field G = forward_dft(e);
    for (int k = -16; k < 16; ++k) {
      CHECK(std::abs(G.at_mode(k) - (k == n ? kTwoPi : 0.0)) < 1e-12);
    }
  }
}

TEST_CASE("transform representation contract") {
  const Lattice lat(4);
  const Field spec(lat, Representation::Frequency);
  CHECK_THROWS_AS(forward_dft(spec), ContractError);
  const Field phys(lat, Representation::Physical);
  CHECK_THROWS_AS(inverse_dft(phys), ContractError);
  CHECK_THROWS_AS(Field(lat, std::vector<cplx>(3), Representation::Physical), ContractError);
}

TEST_CASE("transform agrees with direct summation and round-trips") {
  for (int M : {5, 8, 50, 64}) {
    const Lattice lat(M);
    const Field f = random_field(lat, 11 + M);
    const Field F = forward_dft(f);
    const std::vector<cplx> vals(f.values().begin(), f.values().end());
    const auto direct = oracle::direct_forward(vals, M);
    CHECK(max_abs_diff(F.values(), direct) <= 1e-12 * max_abs(direct));
    const auto back_direct = oracle::direct_inverse(direct, M);
    const Field back = inverse_dft(F);
    CHECK(max_abs_diff(back.values(), back_direct) <= 1e-12 * max_abs(vals));
    const double eps = std::numeric_limits<double>::epsilon();
    CHECK(max_abs_diff(back.values(), vals) <= 10 * eps * 2 * M * max_abs(vals));
  }
}

TEST_CASE("Parseval") {
  for (int M : {7, 32, 128}) {
    const Lattice lat(M);
    const Field f = random_field(lat, 3 * M);
    double phys = 0, freq = 0;
    for (auto v : f.values()) phys += std::norm(v);
    phys *= lat.h();
    const Field fh = forward_dft(f);
    for (auto v : fh.values()) freq += std::norm(v);
    freq /= kTwoPi;
    CHECK(std::abs(phys - freq) <= 1e-12 * phys);
  }
}

TEST_CASE("lattice symbol") {
  const Lattice lat(5);
  CHECK(symbol_sigma_h(lat, 2.0, 0) == 0.0);
  CHECK(symbol_sigma_h(lat, 2.0, -5) == doctest::Approx(std::pow(10.0 / kPi, 2)).epsilon(1e-14));
  CHECK(symbol_sigma_h(lat, 2.0, -5) == doctest::Approx(10.1321).epsilon(1e-5));
  const Lattice big(64);
  for (int k = 1; k < 64; ++k) {
    CHECK(symbol_sigma_h(big, 1.3, k) == symbol_sigma_h(big, 1.3, -k));
    CHECK(symbol_sigma_h(big, 1.3, k) >= symbol_sigma_h(big, 1.3, k - 1));
  }
  const auto table = sigma_h_table(big, 1.3);
  CHECK(table[big.index_of_mode(-64)] == doctest::Approx(std::pow(2.0 / big.h(), 1.3)));
}

TEST_CASE("lattice symbol converges to |k|^alpha at second order") {
  std::vector<double> logh, logerr;
  for (int M = 16; M <= 1024; M *= 2) {
    const Lattice lat(M);
    logh.push_back(std::log(lat.h()));
    logerr.push_back(std::log(std::abs(symbol_sigma_h(lat, 1.5, 3) - std::pow(3.0, 1.5))));
  }
  CHECK(oracle::lsq_slope(logh, logerr) >= 1.9);
  CHECK(symbol_sigma_h(Lattice(4096), 1.5, 3) == doctest::Approx(5.19615).epsilon(1e-4));
}

TEST_CASE("dyadic scales") {
  const Lattice lat(16);
  CHECK(lowest_dyadic_scale(lat) == 1.0 / 32);
  CHECK(lowest_dyadic_scale(Lattice(50)) == 1.0 / 64);
  CHECK(is_dyadic_scale(lat, 0.25));
  CHECK_FALSE(is_dyadic_scale(lat, 0.3));
  CHECK_FALSE(is_dyadic_scale(lat, 2.0));
  CHECK_FALSE(is_dyadic_scale(lat, 1.0 / 64));
  const Field f = random_field(lat, 5);
  CHECK_THROWS_AS(littlewood_paley_project(f, 0.3), DomainError);
}

TEST_CASE("Littlewood-Paley resolution of identity and orthogonality") {
  for (int M : {8, 16, 50}) {
    const Lattice lat(M);
    const Field f = random_field(lat, M);
    std::vector<Field> pieces;
    for (double N = 1.0; N >= lowest_dyadic_scale(lat); N /= 2) {
      pieces.push_back(to_frequency(littlewood_paley_project(f, N)));
    }
    Field sum(lat, Representation::Frequency);
    for (const auto& p : pieces) sum += p;
    CHECK(max_abs_diff(sum.values(), forward_dft(f).values()) < 1e-12 * max_abs(forward_dft(f).values()));
    for (std::size_t a = 0; a + 1 < pieces.size(); ++a) {
      for (std::size_t b = a + 1; b + 1 < pieces.size(); ++b) {
        cplx ip{};
        for (int i = 0; i < lat.size(); ++i) ip += pieces[a].values()[i] * std::conj(pieces[b].values()[i]);
        CHECK(std::abs(ip) < 1e-12);
      }
    }
  }
}

TEST_CASE("Littlewood-Paley shell membership for M = 8") {
  const Lattice lat(8);
  for (int k = -8; k < 8; ++k) {
    const Field e = Field::from_function(lat, [k](double x) { return std::polar(1.0, k * x); });
    for (double N = 1.0; N > lowest_dyadic_scale(lat); N /= 2) {
      const bool inside = std::abs(k) > 8 * N / 2 && std::abs(k) <= 8 * N;
      const Field p = littlewood_paley_project(e, N);
      const double norm = l2_norm_h(p);
      if (inside) {
        CHECK(norm == doctest::Approx(std::sqrt(kTwoPi)).epsilon(1e-12));
      } else {
        CHECK(norm < 1e-12);
      }
    }
  }
  // Low pass keeps |k| <= M N.
  const Field e = Field::from_function(lat, [](double x) { return std::polar(1.0, 4 * x); });
  CHECK(l2_norm_h(low_pass_project(e, 0.5)) == doctest::Approx(std::sqrt(kTwoPi)));
  CHECK(l2_norm_h(low_pass_project(e, 0.25)) < 1e-12);
}

TEST_CASE("Sobolev norms") {
  const Lattice lat(32);
  const Field c = Field::from_function(lat, [](double) { return cplx{2.0, -1.0}; });
  for (double s : {0.0, 0.5, 1.0, 3.0}) {
    CHECK(sobolev_norm_h(c, s) == doctest::Approx(std::sqrt(kTwoPi) * std::sqrt(5.0)).epsilon(1e-12));
  }
  const Field f = random_field(lat, 2);
  CHECK(std::abs(sobolev_norm_h(f, 0.0) - lebesgue_norm_h(f, 2.0)) <= 1e-12 * lebesgue_norm_h(f, 2.0));
  for (int n : {1, 5, -9}) {
    const Field e = Field::from_function(lat, [n](double x) { return std::polar(1.0, n * x); });
    const double expect = std::sqrt(kTwoPi) * std::pow(1.0 + n * n, 0.75);
    CHECK(sobolev_norm_h(e, 1.5) == doctest::Approx(expect).epsilon(1e-12));
  }
}

TEST_CASE("Lebesgue norms") {
  const Lattice lat(16);
  const Field one = Field::from_function(lat, [](double) { return cplx{1.0, 0.0}; });
  for (double p : {1.0, 2.0, 3.5}) {
    CHECK(lebesgue_norm_h(one, p) == doctest::Approx(std::pow(kTwoPi, 1.0 / p)).epsilon(1e-13));
  }
  CHECK(lebesgue_norm_h(one, kInf) == 1.0);
  CHECK_THROWS_AS(lebesgue_norm_h(one, 0.5), DomainError);
  const Field f = random_field(lat, 9);
  CHECK(lebesgue_norm_h(f, 2) <=
        std::sqrt(lebesgue_norm_h(f, 1) * lebesgue_norm_h(f, kInf)) * (1 + 1e-12));
  // A single-site delta attains the embedding constant h^{-(1/p - 1/q)}.
  Field delta(lat, Representation::Physical);
  delta.values()[lat.index_of_site(0)] = 1.0;
  for (auto [p, q] : {std::pair{1.0, 2.0}, std::pair{2.0, kInf}, std::pair{1.0, kInf}}) {
    const double lhs = lebesgue_norm_h(delta, q);
    const double rhs = std::pow(lat.h(), (std::isinf(q) ? 0.0 : 1.0 / q) - 1.0 / p) * lebesgue_norm_h(delta, p);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-13));
  }
}
