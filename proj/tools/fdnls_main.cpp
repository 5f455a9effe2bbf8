#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "fdnls/config.hpp"
#include "fdnls/errors.hpp"
#include "fdnls/runner.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Fractional discrete NLS simulator and verification harness"};
  std::string experiment;
  std::string config_path;
  fdnls::ConfigOverrides ov;
  app.add_option("experiment", experiment,
                 "simulate | converge | sharpness | compact-support | mi-region | mi-gain | "
                 "mi-track | kernel-probe | oracle-check")
      ->required();
  app.add_option("--config", config_path, "JSON config file");
  app.add_option("--alpha", ov.alpha, "Levy index in (0, 2]");
  app.add_option("--mu", ov.mu, "nonlinearity sign, -1 or +1");
  app.add_option("--M", ov.M, "half the lattice site count");
  app.add_option("--M-ref", ov.M_ref, "reference lattice M");
  app.add_option("--dt", ov.dt, "time step");
  app.add_option("--t-end", ov.t_end, "final time");
  app.add_option("--seed", ov.seed, "64-bit seed");
  app.add_option("--out", ov.out_dir, "output directory");
  CLI11_PARSE(app, argc, argv);

  fdnls::RunConfig cfg;
  try {
    std::string text;
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw fdnls::ConfigError("cannot read config file " + config_path);
      std::stringstream ss;
      ss << in.rdbuf();
      text = ss.str();
    }
    cfg = fdnls::parse_config(text, ov, fdnls::parse_experiment(experiment));
  } catch (const fdnls::Error& e) {
    std::cerr << "fdnls: " << e.what() << '\n';
    return 1;
  }
  const int status = fdnls::run_experiment(cfg);
  std::cout << "fdnls " << experiment << ": " << (status == 0 ? "ok" : "failed")
            << " (manifest at " << cfg.out_dir << "/manifest.json)\n";
  return status;
}
