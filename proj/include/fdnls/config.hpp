#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "fdnls/data.hpp"
#include "fdnls/dynamics.hpp"
#include "fdnls/lattice.hpp"
#include "fdnls/mi.hpp"

namespace fdnls {

enum class Experiment {
  Simulate,
  Converge,
  Sharpness,
  CompactSupport,
  MiRegion,
  MiGain,
  MiTrack,
  KernelProbe,
  OracleCheck,
};

const char* to_string(Experiment e);
Experiment parse_experiment(const std::string& name);

/// Grid for the mi-region mask: xi runs over [0, M], the second axis over
/// [y_min, y_max] and is either the amplitude A (alpha fixed) or alpha (A fixed).
struct RegionGrid {
  std::string axis = "A";
  int xi_points = 200;
  int y_points = 200;
  double y_min = 0.05;
  double y_max = 4.0;
  double A = 1.0;
};

struct RunConfig {
  Experiment experiment = Experiment::Simulate;
  ModelParams params;
  int M = 64;
  int M_ref = 0;  // 0: 8 * max(M_list)
  std::vector<int> M_list{16, 32, 64, 128};
  double dt = 0.0;  // 0: experiment default
  double t_end = 1.0;
  int record_stride = 1;
  std::uint64_t seed = 1;
  std::string out_dir = "out";

  bool has_data = false;
  DatumSpec data = ConstantDatum{};
  std::optional<CWSpec> cw;

  double t_eval = 0.5;
  double T = 0.5;
  double eps = 0.3;
  int records = 50;
  bool validate_reference = true;
  std::vector<int> k_list;
  std::vector<double> A_list{0.25, 0.5, 1.0, 2.0, 4.0};
  double perturbation = 1e-5;
  std::vector<int> k_track;
  std::vector<double> N_list{1.0, 0.5, 0.25};
  std::vector<double> t_fractions{1.0, 0.5, 0.25, 0.125, 0.0625, 0.03125, 0.015625};
  std::vector<int> wavepacket_M;
  RegionGrid region;

  /// Range checks that depend on the experiment; throws ConfigError.
  void validate() const;
};

/// Flag values that override the file (unset fields leave it untouched).
struct ConfigOverrides {
  std::optional<double> alpha;
  std::optional<int> mu;
  std::optional<int> M;
  std::optional<int> M_ref;
  std::optional<double> dt;
  std::optional<double> t_end;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out_dir;
};

/// Parses a JSON document. Unknown keys are rejected by name.
RunConfig parse_config(const std::string& text);
RunConfig parse_config(const std::string& text, const ConfigOverrides& overrides,
                       std::optional<Experiment> experiment = std::nullopt);

/// Echo of the resolved config, written into the manifest.
nlohmann::json to_json(const RunConfig& cfg);

}  // namespace fdnls
