#include "fdnls/dynamics.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "fdnls/errors.hpp"
#include "fdnls/fourier.hpp"
#include "fdnls/spectral.hpp"

namespace fdnls {

void SolverConfig::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    throw DomainError("solver: dt must be positive, got " + std::to_string(dt));
  }
  if (!(t_end >= 0.0) || !std::isfinite(t_end)) {
    throw DomainError("solver: t_end must be >= 0, got " + std::to_string(t_end));
  }
  if (t_end > 0.0 && dt > t_end * (1.0 + 1e-12)) {
    throw DomainError("solver: dt = " + std::to_string(dt) +
                      " exceeds t_end = " + std::to_string(t_end));
  }
  if (record_stride < 1) {
    throw DomainError("solver: record_stride must be >= 1");
  }
}

int SolverConfig::steps() const {
  if (t_end == 0.0) return 0;
  return static_cast<int>(std::ceil(t_end / dt - 1e-9));
}

double SolverConfig::effective_dt() const {
  const int n = steps();
  return n == 0 ? dt : t_end / n;
}

double default_time_step(const Lattice& lattice, const ModelParams& params) {
  const double fastest = symbol_sigma_h(lattice, params.alpha, -lattice.M());
  return 0.1 * std::min(1.0, 1.0 / fastest);
}

namespace {

// Phase-rotate every entry by the matching multiplier; both in natural order.
Field apply_multiplier(const Field& f, const std::function<double(int)>& symbol,
                       double t) {
  Field spec = to_frequency(f);
  const Lattice& lat = spec.lattice();
  auto values = spec.values();
  for (int i = 0; i < lat.size(); ++i) {
    values[i] *= std::polar(1.0, -t * symbol(lat.mode_at_index(i)));
  }
  return f.is_physical() ? inverse_dft(spec) : spec;
}

// Split-step state kept in FFT order (site j at index j mod 2M) so the
// transforms need no twiddles.
class SplitStepEngine {
 public:
  SplitStepEngine(const Lattice& lattice, std::vector<double> symbol_natural,
                  int bandlimit, int mu)
      : lattice_(lattice),
        n_(lattice.size()),
        plan_(detail::plan_for(lattice.size())),
        symbol_(n_),
        bandlimit_(bandlimit),
        mu_(mu),
        state_(n_),
        spectrum_(n_),
        natural_(n_),
        natural_spectrum_(n_) {
    for (int i = 0; i < n_; ++i) symbol_[to_fft(i)] = symbol_natural[i];
  }

  void load(std::span<const cplx> natural_physical) {
    for (int i = 0; i < n_; ++i) state_[to_fft(i)] = natural_physical[i];
  }

  void prepare_linear(double dt) {
    propagator_.resize(n_);
    for (int q = 0; q < n_; ++q) {
      const int k = q < lattice_.M() ? q : q - n_;
      const bool keep = bandlimit_ < 0 || std::abs(k) <= bandlimit_;
      propagator_[q] = keep ? std::polar(1.0 / n_, -dt * symbol_[q]) : cplx{};
    }
  }

  // u <- u exp(-i mu |u|^2 tau); returns max |u|.
  double nonlinear(double tau, double time) {
    double sup = 0.0;
    bool finite = true;
    for (auto& u : state_) {
      const double a2 = std::norm(u);
      finite = finite && std::isfinite(a2);
      u *= std::polar(1.0, -mu_ * a2 * tau);
      sup = std::max(sup, a2);
    }
    sup = std::sqrt(sup);
    if (!finite) throw BlowUpError(time, std::numeric_limits<double>::quiet_NaN());
    if (sup > kBlowUpThreshold) throw BlowUpError(time, sup);
    return sup;
  }

  void linear() {
    plan_.forward(state_);
    for (int q = 0; q < n_; ++q) state_[q] *= propagator_[q];
    plan_.backward(state_);
  }

  // Fills natural-order physical values and F_h spectrum (truncated for
  // continuum runs).
  void snapshot() {
    const double h = lattice_.h();
    for (int i = 0; i < n_; ++i) natural_[i] = state_[to_fft(i)];
    spectrum_.assign(state_.begin(), state_.end());
    plan_.forward(spectrum_);
    for (int i = 0; i < n_; ++i) {
      const int k = i - lattice_.M();
      cplx c = h * spectrum_[to_fft(i)];
      if (bandlimit_ >= 0 && std::abs(k) > bandlimit_) c = 0.0;
      natural_spectrum_[i] = c;
    }
  }

  double mass() const {
    double sum = 0.0;
    for (const auto& u : natural_) sum += std::norm(u);
    return lattice_.h() * sum;
  }

  double energy() const {
    double kinetic = 0.0;
    for (int i = 0; i < n_; ++i) {
      kinetic += symbol_[to_fft(i)] * std::norm(natural_spectrum_[i]);
    }
    double quartic = 0.0;
    for (const auto& u : natural_) quartic += std::norm(u) * std::norm(u);
    return 0.5 * kinetic / kTwoPi + 0.25 * mu_ * lattice_.h() * quartic;
  }

  std::span<const cplx> natural() const { return natural_; }
  std::span<const cplx> natural_spectrum() const { return natural_spectrum_; }

 private:
  int to_fft(int natural_index) const {
    return (natural_index + lattice_.M()) % n_;
  }

  Lattice lattice_;
  int n_;
  const detail::FftPlan& plan_;
  std::vector<double> symbol_;
  int bandlimit_;
  int mu_;
  std::vector<cplx> state_;
  std::vector<cplx> spectrum_;
  std::vector<cplx> propagator_;
  std::vector<cplx> natural_;
  std::vector<cplx> natural_spectrum_;
};

// Runs the Strang composition N(dt/2) L N(dt/2) per step; adjacent nonlinear
// half steps are fused, since |u| is invariant under the nonlinear flow.
template <typename OnRecord>
void integrate(SplitStepEngine& engine, const SolverConfig& cfg,
               OnRecord&& on_record) {
  cfg.validate();
  const int steps = cfg.steps();
  const double dt = cfg.effective_dt();
  engine.prepare_linear(dt);

  auto record = [&](double t) {
    engine.snapshot();
    on_record(t);
  };

  record(0.0);
  if (steps == 0) return;
  engine.nonlinear(0.5 * dt, 0.0);
  for (int step = 1; step <= steps; ++step) {
    const double t = (step == steps) ? cfg.t_end : step * dt;
    engine.linear();
    const bool last = step == steps;
    if (last || step % cfg.record_stride == 0) {
      engine.nonlinear(0.5 * dt, t);
      record(t);
      if (!last) engine.nonlinear(0.5 * dt, t);
    } else {
      engine.nonlinear(dt, t);
    }
  }
}

std::vector<double> continuum_symbol(const Lattice& reference, double alpha) {
  std::vector<double> out(reference.size());
  for (int i = 0; i < reference.size(); ++i) {
    out[i] = symbol_sigma_0(alpha, reference.mode_at_index(i));
  }
  return out;
}

}  // namespace

Field linear_propagate_discrete(const Field& f, double t, const ModelParams& params) {
  params.validate();
  const Lattice& lat = f.lattice();
  return apply_multiplier(
      f, [&](int k) { return symbol_sigma_h(lat, params.alpha, k); }, t);
}

ContinuumField linear_propagate_continuum(const ContinuumField& u, double t,
                                          const ModelParams& params) {
  params.validate();
  Field spec = apply_multiplier(
      u.spectrum(), [&](int k) { return symbol_sigma_0(params.alpha, k); }, t);
  return ContinuumField(std::move(spec), u.bandlimit());
}

double discrete_mass(const Field& u) {
  const double n = l2_norm_h(u);
  return n * n;
}

double discrete_energy(const Field& u, const ModelParams& params) {
  const Field spec = to_frequency(u);
  const Field phys = to_physical(u);
  const Lattice& lat = spec.lattice();
  auto sv = spec.values();
  double kinetic = 0.0;
  for (int i = 0; i < lat.size(); ++i) {
    kinetic += symbol_sigma_h(lat, params.alpha, lat.mode_at_index(i)) * std::norm(sv[i]);
  }
  double quartic = 0.0;
  for (const auto& v : phys.values()) quartic += std::norm(v) * std::norm(v);
  return 0.5 * kinetic / kTwoPi + 0.25 * params.mu * lat.h() * quartic;
}

double continuum_mass(const ContinuumField& u) {
  const double n = u.l2_norm();
  return n * n;
}

double continuum_energy(const ContinuumField& u, const ModelParams& params) {
  const Lattice& lat = u.reference();
  auto sv = u.spectrum().values();
  double kinetic = 0.0;
  for (int i = 0; i < lat.size(); ++i) {
    kinetic += symbol_sigma_0(params.alpha, lat.mode_at_index(i)) * std::norm(sv[i]);
  }
  // |u|^4 has content up to 4 K_ref < 2 M_ref, so the fine-grid sum is exact.
  double quartic = 0.0;
  for (const auto& v : u.samples().values()) quartic += std::norm(v) * std::norm(v);
  return 0.5 * kinetic / kTwoPi + 0.25 * params.mu * lat.h() * quartic;
}

Trajectory evolve_nonlinear(const Field& u0, const ModelParams& params,
                            const SolverConfig& cfg, const RecordOptions& opts) {
  params.validate();
  const Field start = to_physical(u0);
  const Lattice& lat = start.lattice();
  SplitStepEngine engine(lat, sigma_h_table(lat, params.alpha), -1, params.mu);
  engine.load(start.values());

  Trajectory traj{{}, {}, start, {}};
  integrate(engine, cfg, [&](double t) {
    traj.times.push_back(t);
    traj.log.times.push_back(t);
    traj.log.mass.push_back(engine.mass());
    traj.log.energy.push_back(engine.energy());
    auto phys = engine.natural();
    if (opts.keep_snapshots) {
      traj.snapshots.emplace_back(lat, std::vector<cplx>(phys.begin(), phys.end()),
                                  Representation::Physical);
    }
    if (opts.observer) opts.observer(SnapshotView{t, lat, phys, engine.natural_spectrum()});
  });
  auto phys = engine.natural();
  traj.final_state = Field(lat, std::vector<cplx>(phys.begin(), phys.end()),
                           Representation::Physical);
  return traj;
}

ContinuumTrajectory evolve_nonlinear(const ContinuumField& u0,
                                     const ModelParams& params,
                                     const SolverConfig& cfg,
                                     const RecordOptions& opts) {
  params.validate();
  const Lattice& lat = u0.reference();
  const int bandlimit = u0.bandlimit();
  SplitStepEngine engine(lat, continuum_symbol(lat, params.alpha), bandlimit, params.mu);
  engine.load(u0.samples().values());

  ContinuumTrajectory traj{{}, {}, u0, {}};
  auto current = [&]() {
    auto spec = engine.natural_spectrum();
    return ContinuumField(Field(lat, std::vector<cplx>(spec.begin(), spec.end()),
                                Representation::Frequency),
                          bandlimit);
  };
  integrate(engine, cfg, [&](double t) {
    const ContinuumField now = current();
    traj.times.push_back(t);
    traj.log.times.push_back(t);
    traj.log.mass.push_back(continuum_mass(now));
    traj.log.energy.push_back(continuum_energy(now, params));
    if (opts.keep_snapshots) traj.snapshots.push_back(now);
    if (opts.observer) {
      const Field samples = now.samples();
      opts.observer(SnapshotView{t, lat, samples.values(), now.spectrum().values()});
    }
  });
  traj.final_state = current();
  return traj;
}

}  // namespace fdnls
