#pragma once

#include <cstdint>
#include <utility>
#include <variant>
#include <vector>

#include "fdnls/field.hpp"
#include "fdnls/oracles.hpp"
#include "fdnls/transfer.hpp"

namespace fdnls {

/// SplitMix64 evaluated at a counter: value(i) = mix(seed + (i + 1) * 0x9e3779b97f4a7c15).
/// Stream i of one seed never depends on how many values were drawn before.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t at(std::uint64_t counter) const noexcept;
  /// Top 53 bits of at(counter) scaled to [0, 1).
  double uniform_at(std::uint64_t counter) const noexcept;

  std::uint64_t seed() const noexcept { return seed_; }

 private:
  std::uint64_t seed_;
};

struct ConstantDatum {
  cplx A{1.0, 0.0};
};

struct PlaneWaveDatum {
  PlaneWaveSpec spec;
};

/// u_hat(k) = 2 pi amplitude <k>^{-s-1/2-eps} e^{i theta_k} for |k| <= k_data,
/// theta_k = 2 pi * uniform_at(k + k_data).
struct RandomSobolevDatum {
  double s = 1.0;
  double eps = 0.05;
  double amplitude = 1.0;
  int k_data = 32;
  std::uint64_t seed = 1;
};

/// u(x) = sum_k c_k e^{ikx}.
struct ModesDatum {
  std::vector<std::pair<int, cplx>> modes;
};

using DatumSpec = std::variant<ConstantDatum, PlaneWaveDatum, RandomSobolevDatum, ModesDatum>;

/// Largest |k| carried by the datum.
int datum_max_mode(const DatumSpec& spec);

/// Bandlimited torus datum; throws ResolutionError if it does not fit.
ContinuumField make_continuum_datum(const DatumSpec& spec, const Lattice& reference,
                                    int bandlimit = -1);

/// Point samples of the datum on the lattice (no cell averaging).
Field sample_datum(const DatumSpec& spec, const Lattice& lattice);

}  // namespace fdnls
