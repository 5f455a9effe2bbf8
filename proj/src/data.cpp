#include "fdnls/data.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fdnls/errors.hpp"
#include "fdnls/spectral.hpp"

namespace fdnls {

std::uint64_t SplitMix64::at(std::uint64_t counter) const noexcept {
  std::uint64_t z = seed_ + (counter + 1) * 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double SplitMix64::uniform_at(std::uint64_t counter) const noexcept {
  return static_cast<double>(at(counter) >> 11) * 0x1.0p-53;
}

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

// Torus coefficient u_hat(k) of the datum.
std::function<cplx(int)> coefficients_of(const DatumSpec& spec) {
  return std::visit(
      Overloaded{
          [](const ConstantDatum& d) -> std::function<cplx(int)> {
            return [A = d.A](int k) { return k == 0 ? kTwoPi * A : cplx{}; };
          },
          [](const PlaneWaveDatum& d) -> std::function<cplx(int)> {
            const cplx c = kTwoPi * d.spec.A * std::pow(std::abs(d.spec.n), -d.spec.s);
            return [c, n = d.spec.n](int k) { return k == n ? c : cplx{}; };
          },
          [](const RandomSobolevDatum& d) -> std::function<cplx(int)> {
            return [d](int k) -> cplx {
              if (std::abs(k) > d.k_data) return {};
              const SplitMix64 rng(d.seed);
              const double theta = kTwoPi * rng.uniform_at(static_cast<std::uint64_t>(k + d.k_data));
              const double weight =
                  std::pow(japanese_bracket(k), -d.s - 0.5 - d.eps);
              return kTwoPi * d.amplitude * weight * std::polar(1.0, theta);
            };
          },
          [](const ModesDatum& d) -> std::function<cplx(int)> {
            return [d](int k) {
              cplx sum{};
              for (const auto& [mode, c] : d.modes) {
                if (mode == k) sum += kTwoPi * c;
              }
              return sum;
            };
          },
      },
      spec);
}

}  // namespace

int datum_max_mode(const DatumSpec& spec) {
  return std::visit(
      Overloaded{
          [](const ConstantDatum&) { return 0; },
          [](const PlaneWaveDatum& d) { return std::abs(d.spec.n); },
          [](const RandomSobolevDatum& d) { return d.k_data; },
          [](const ModesDatum& d) {
            int m = 0;
            for (const auto& [k, c] : d.modes) m = std::max(m, std::abs(k));
            return m;
          },
      },
      spec);
}

ContinuumField make_continuum_datum(const DatumSpec& spec, const Lattice& reference,
                                    int bandlimit) {
  if (bandlimit < 0) bandlimit = ContinuumField::default_bandlimit(reference);
  if (const auto* pw = std::get_if<PlaneWaveDatum>(&spec)) pw->spec.validate();
  if (const auto* rs = std::get_if<RandomSobolevDatum>(&spec)) {
    if (rs->k_data < 0) throw DomainError("random Sobolev datum: k_data must be >= 0");
  }
  const int kmax = datum_max_mode(spec);
  if (kmax > bandlimit) {
    throw ResolutionError("datum: mode " + std::to_string(kmax) +
                          " exceeds reference bandlimit " + std::to_string(bandlimit));
  }
  return ContinuumField::from_coefficients(reference, bandlimit, coefficients_of(spec));
}

Field sample_datum(const DatumSpec& spec, const Lattice& lattice) {
  const int kmax = datum_max_mode(spec);
  const auto coeff = coefficients_of(spec);
  std::vector<std::pair<int, cplx>> terms;
  for (int k = -kmax; k <= kmax; ++k) {
    const cplx c = coeff(k);
    if (c != cplx{}) terms.emplace_back(k, c / kTwoPi);
  }
  return Field::from_function(lattice, [&](double x) {
    cplx sum{};
    for (const auto& [k, c] : terms) sum += c * std::polar(1.0, k * x);
    return sum;
  });
}

}  // namespace fdnls
