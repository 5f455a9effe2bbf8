#include "fdnls/config.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "fdnls/errors.hpp"

namespace fdnls {

using nlohmann::json;

namespace {

struct ExperimentName {
  Experiment e;
  const char* name;
};

constexpr ExperimentName kExperiments[] = {
    {Experiment::Simulate, "simulate"},
    {Experiment::Converge, "converge"},
    {Experiment::Sharpness, "sharpness"},
    {Experiment::CompactSupport, "compact-support"},
    {Experiment::MiRegion, "mi-region"},
    {Experiment::MiGain, "mi-gain"},
    {Experiment::MiTrack, "mi-track"},
    {Experiment::KernelProbe, "kernel-probe"},
    {Experiment::OracleCheck, "oracle-check"},
};

void reject_unknown(const json& obj, const std::set<std::string>& known, const std::string& where) {
  std::vector<std::string> unknown;
  for (const auto& [key, value] : obj.items()) {
    if (!known.count(key)) unknown.push_back(key);
  }
  if (unknown.empty()) return;
  std::string msg = "unknown key(s) in " + where + ":";
  for (const auto& k : unknown) msg += " " + k;
  throw ConfigError(msg);
}

template <typename T>
T get(const json& obj, const char* key, const std::string& where) {
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(where + "." + key + ": " + e.what());
  }
}

template <typename T>
void maybe(const json& obj, const char* key, T& out, const std::string& where) {
  if (obj.contains(key)) out = get<T>(obj, key, where);
}

cplx parse_complex(const json& v, const std::string& where) {
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
    return {v[0].get<double>(), v[1].get<double>()};
  }
  throw ConfigError(where + ": expected a number or [re, im]");
}

std::vector<std::pair<int, cplx>> parse_modes(const json& arr, const std::string& where) {
  if (!arr.is_array()) throw ConfigError(where + ": expected an array of modes");
  std::vector<std::pair<int, cplx>> out;
  for (const auto& m : arr) {
    if (m.is_number_integer()) {
      out.emplace_back(m.get<int>(), cplx{1.0, 0.0});
    } else if (m.is_array() && m.size() == 3 && m[0].is_number_integer()) {
      out.emplace_back(m[0].get<int>(), cplx{m[1].get<double>(), m[2].get<double>()});
    } else {
      throw ConfigError(where + ": each mode is k or [k, re, im]");
    }
  }
  return out;
}

void parse_data(const json& d, RunConfig& cfg) {
  const std::string where = "data";
  if (!d.is_object() || !d.contains("kind")) throw ConfigError("data: needs a \"kind\"");
  const auto kind = get<std::string>(d, "kind", where);
  cfg.has_data = true;
  if (kind == "constant") {
    reject_unknown(d, {"kind", "A"}, where);
    ConstantDatum c;
    if (d.contains("A")) c.A = parse_complex(d["A"], "data.A");
    cfg.data = c;
  } else if (kind == "plane-wave") {
    reject_unknown(d, {"kind", "A", "n", "s"}, where);
    PlaneWaveSpec p;
    if (d.contains("A")) p.A = parse_complex(d["A"], "data.A");
    maybe(d, "n", p.n, where);
    maybe(d, "s", p.s, where);
    cfg.data = PlaneWaveDatum{p};
  } else if (kind == "random-sobolev") {
    reject_unknown(d, {"kind", "s", "eps", "amplitude", "k_data", "seed"}, where);
    RandomSobolevDatum r;
    r.seed = cfg.seed;
    maybe(d, "s", r.s, where);
    maybe(d, "eps", r.eps, where);
    maybe(d, "amplitude", r.amplitude, where);
    maybe(d, "k_data", r.k_data, where);
    maybe(d, "seed", r.seed, where);
    cfg.data = r;
  } else if (kind == "modes") {
    reject_unknown(d, {"kind", "modes"}, where);
    cfg.data = ModesDatum{parse_modes(d.at("modes"), "data.modes")};
  } else if (kind == "cw") {
    reject_unknown(d, {"kind", "A", "eps", "modes"}, where);
    CWSpec cw;
    maybe(d, "A", cw.A, where);
    maybe(d, "eps", cw.eps, where);
    if (d.contains("modes")) cw.modes = parse_modes(d["modes"], "data.modes");
    cfg.cw = cw;
    cfg.data = ConstantDatum{cw.A};
  } else {
    throw ConfigError("data.kind: unknown kind \"" + kind + "\"");
  }
}

void parse_region(const json& r, RegionGrid& g) {
  reject_unknown(r, {"axis", "xi_points", "y_points", "y_min", "y_max", "A"}, "region");
  maybe(r, "axis", g.axis, "region");
  maybe(r, "xi_points", g.xi_points, "region");
  maybe(r, "y_points", g.y_points, "region");
  maybe(r, "y_min", g.y_min, "region");
  maybe(r, "y_max", g.y_max, "region");
  maybe(r, "A", g.A, "region");
}

void fail(const std::string& msg) { throw ConfigError(msg); }

}  // namespace

const char* to_string(Experiment e) {
  for (const auto& x : kExperiments) {
    if (x.e == e) return x.name;
  }
  return "?";
}

Experiment parse_experiment(const std::string& name) {
  for (const auto& x : kExperiments) {
    if (name == x.name) return x.e;
  }
  std::string msg = "unknown experiment \"" + name + "\"; expected one of:";
  for (const auto& x : kExperiments) msg += std::string(" ") + x.name;
  throw ConfigError(msg);
}

void RunConfig::validate() const {
  if (!(params.alpha > 0.0) || params.alpha > 2.0) {
    fail("alpha = " + std::to_string(params.alpha) + " must lie in (0, 2]");
  }
  if (params.mu != 1 && params.mu != -1) fail("mu must be -1 (focusing) or +1 (defocusing)");
  const bool needs_dispersive = experiment == Experiment::Converge ||
                                experiment == Experiment::Sharpness ||
                                experiment == Experiment::CompactSupport ||
                                experiment == Experiment::KernelProbe;
  if (needs_dispersive && !(params.alpha > 1.0)) {
    fail("alpha must lie in (1, 2] for the " + std::string(to_string(experiment)) +
         " experiment (the convergence and dispersive estimates need alpha > 1)");
  }
  if (M < 1) fail("M must be a positive integer");
  if (M_ref < 0) fail("M_ref must be >= 0 (0 selects 8 * max(M_list))");
  if (dt < 0.0 || !std::isfinite(dt)) fail("dt must be >= 0 (0 selects the default step)");
  if (!(t_end >= 0.0)) fail("t_end must be >= 0");
  if (record_stride < 1) fail("record_stride must be >= 1");
  if (experiment == Experiment::Converge || experiment == Experiment::Sharpness ||
      experiment == Experiment::CompactSupport) {
    if (M_list.size() < 3) fail("M_list needs at least 3 entries");
    if (!std::is_sorted(M_list.begin(), M_list.end()) ||
        std::adjacent_find(M_list.begin(), M_list.end()) != M_list.end()) {
      fail("M_list must be strictly increasing");
    }
    if (M_list.front() < 1) fail("M_list entries must be positive");
    if (M_ref != 0 && M_ref < 8 * M_list.back()) fail("M_ref must be at least 8 * max(M_list)");
  }
  if (experiment == Experiment::Sharpness) {
    if (!(eps > 0.0) || !(eps < 1.0 / std::sqrt(2.0))) {
      fail("eps must lie in (0, 1/sqrt(2)) for the sharpness datum (the lower bound needs eps/2 - eps^3 > 0)");
    }
    if (!(T > 0.0) || T > 1.0) fail("T must lie in (0, 1] for the sharpness experiment");
  }
  if (experiment == Experiment::Converge && !(t_eval > 0.0)) fail("t_eval must be positive");
  if (experiment == Experiment::CompactSupport && !(T > 0.0)) fail("T must be positive");
  if (experiment == Experiment::MiGain) {
    if (A_list.empty()) fail("A_list must not be empty");
    for (std::size_t i = 0; i < A_list.size(); ++i) {
      if (!(A_list[i] > 0.0) || (i > 0 && A_list[i] <= A_list[i - 1])) {
        fail("A_list must be positive and strictly ascending");
      }
    }
    if (!(perturbation > 0.0) || perturbation > 1e-2) fail("perturbation must lie in (0, 1e-2]");
  }
  if (cw) cw->validate(Lattice(M));
  if (experiment == Experiment::MiRegion) {
    if (region.axis != "A" && region.axis != "alpha") fail("region.axis must be \"A\" or \"alpha\"");
    if (region.xi_points < 2 || region.y_points < 2) fail("region grids need >= 2 points");
    if (!(region.y_min > 0.0) || !(region.y_max > region.y_min)) fail("region needs 0 < y_min < y_max");
    if (region.axis == "alpha" && region.y_max > 2.0) fail("region alpha axis must stay within (0, 2]");
  }
  if (experiment == Experiment::KernelProbe) {
    for (double f : t_fractions) {
      if (!(f > 0.0) || f > 1.0) fail("t_fractions must lie in (0, 1]");
    }
    for (double N : N_list) {
      if (!(N > 0.0) || N > 1.0) fail("N_list entries must be dyadic scales in (0, 1]");
    }
  }
}

RunConfig parse_config(const std::string& text) { return parse_config(text, {}); }

RunConfig parse_config(const std::string& text, const ConfigOverrides& ov,
                       std::optional<Experiment> experiment) {
  json doc;
  try {
    doc = text.empty() ? json::object() : json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");
  reject_unknown(doc,
                 {"experiment", "alpha", "mu", "M", "M_ref", "M_list", "dt", "t_end",
                  "record_stride", "seed", "out", "data", "t_eval", "T", "eps", "records",
                  "validate_reference", "k_list", "A_list", "perturbation", "k_track",
                  "N_list", "t_fractions", "wavepacket_M", "region"},
                 "config");
  RunConfig cfg;
  const std::string w = "config";
  if (doc.contains("experiment")) cfg.experiment = parse_experiment(get<std::string>(doc, "experiment", w));
  if (experiment) cfg.experiment = *experiment;
  maybe(doc, "alpha", cfg.params.alpha, w);
  maybe(doc, "mu", cfg.params.mu, w);
  maybe(doc, "M", cfg.M, w);
  maybe(doc, "M_ref", cfg.M_ref, w);
  maybe(doc, "M_list", cfg.M_list, w);
  maybe(doc, "dt", cfg.dt, w);
  maybe(doc, "t_end", cfg.t_end, w);
  maybe(doc, "record_stride", cfg.record_stride, w);
  maybe(doc, "seed", cfg.seed, w);
  maybe(doc, "out", cfg.out_dir, w);
  maybe(doc, "t_eval", cfg.t_eval, w);
  maybe(doc, "T", cfg.T, w);
  maybe(doc, "eps", cfg.eps, w);
  maybe(doc, "records", cfg.records, w);
  maybe(doc, "validate_reference", cfg.validate_reference, w);
  maybe(doc, "k_list", cfg.k_list, w);
  maybe(doc, "A_list", cfg.A_list, w);
  maybe(doc, "perturbation", cfg.perturbation, w);
  maybe(doc, "k_track", cfg.k_track, w);
  maybe(doc, "N_list", cfg.N_list, w);
  maybe(doc, "t_fractions", cfg.t_fractions, w);
  maybe(doc, "wavepacket_M", cfg.wavepacket_M, w);

  if (ov.alpha) cfg.params.alpha = *ov.alpha;
  if (ov.mu) cfg.params.mu = *ov.mu;
  if (ov.M) cfg.M = *ov.M;
  if (ov.M_ref) cfg.M_ref = *ov.M_ref;
  if (ov.dt) cfg.dt = *ov.dt;
  if (ov.t_end) cfg.t_end = *ov.t_end;
  if (ov.seed) cfg.seed = *ov.seed;
  if (ov.out_dir) cfg.out_dir = *ov.out_dir;

  // Parsed after the seed override so random data inherit the final seed.
  if (doc.contains("data")) parse_data(doc["data"], cfg);
  if (doc.contains("region")) parse_region(doc["region"], cfg.region);
  cfg.validate();
  return cfg;
}

namespace {

json complex_json(cplx c) { return json::array({c.real(), c.imag()}); }

json modes_json(const std::vector<std::pair<int, cplx>>& modes) {
  json arr = json::array();
  for (const auto& [k, c] : modes) arr.push_back(json::array({k, c.real(), c.imag()}));
  return arr;
}

json data_json(const RunConfig& cfg) {
  if (cfg.cw) {
    return {{"kind", "cw"}, {"A", cfg.cw->A}, {"eps", cfg.cw->eps}, {"modes", modes_json(cfg.cw->modes)}};
  }
  return std::visit(
      [](const auto& d) -> json {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, ConstantDatum>) {
          return {{"kind", "constant"}, {"A", complex_json(d.A)}};
        } else if constexpr (std::is_same_v<T, PlaneWaveDatum>) {
          return {{"kind", "plane-wave"}, {"A", complex_json(d.spec.A)}, {"n", d.spec.n}, {"s", d.spec.s}};
        } else if constexpr (std::is_same_v<T, RandomSobolevDatum>) {
          return {{"kind", "random-sobolev"}, {"s", d.s}, {"eps", d.eps}, {"amplitude", d.amplitude},
                  {"k_data", d.k_data}, {"seed", d.seed}};
        } else {
          return {{"kind", "modes"}, {"modes", modes_json(d.modes)}};
        }
      },
      cfg.data);
}

}  // namespace

json to_json(const RunConfig& cfg) {
  json j = {
      {"experiment", to_string(cfg.experiment)},
      {"alpha", cfg.params.alpha},
      {"mu", cfg.params.mu},
      {"M", cfg.M},
      {"M_ref", cfg.M_ref},
      {"M_list", cfg.M_list},
      {"dt", cfg.dt},
      {"t_end", cfg.t_end},
      {"record_stride", cfg.record_stride},
      {"seed", cfg.seed},
      {"out", cfg.out_dir},
      {"t_eval", cfg.t_eval},
      {"T", cfg.T},
      {"eps", cfg.eps},
      {"records", cfg.records},
      {"validate_reference", cfg.validate_reference},
      {"k_list", cfg.k_list},
      {"A_list", cfg.A_list},
      {"perturbation", cfg.perturbation},
      {"k_track", cfg.k_track},
      {"N_list", cfg.N_list},
      {"t_fractions", cfg.t_fractions},
      {"wavepacket_M", cfg.wavepacket_M},
      {"region",
       {{"axis", cfg.region.axis},
        {"xi_points", cfg.region.xi_points},
        {"y_points", cfg.region.y_points},
        {"y_min", cfg.region.y_min},
        {"y_max", cfg.region.y_max},
        {"A", cfg.region.A}}},
  };
  if (cfg.has_data || cfg.cw) j["data"] = data_json(cfg);
  return j;
}

}  // namespace fdnls
