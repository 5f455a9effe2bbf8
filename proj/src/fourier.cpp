#include "fdnls/fourier.hpp"

#include <fftw3.h>

#include <map>
#include <memory>
#include <mutex>
#include <string>

#include "fdnls/errors.hpp"

namespace fdnls {
namespace detail {
namespace {

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

fftw_complex* as_fftw(cplx* p) { return reinterpret_cast<fftw_complex*>(p); }

}  // namespace

FftPlan::FftPlan(int n) : n_(n) {
  // Caller holds planner_mutex(); FFTW's planner is not reentrant.
  auto* scratch = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n));
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  forward_plan_ = fftw_plan_dft_1d(n, scratch, scratch, FFTW_FORWARD, flags);
  backward_plan_ = fftw_plan_dft_1d(n, scratch, scratch, FFTW_BACKWARD, flags);
  fftw_free(scratch);
  if (forward_plan_ == nullptr || backward_plan_ == nullptr) {
    throw Error("FFTW failed to plan a transform of length " + std::to_string(n));
  }
}

FftPlan::~FftPlan() {
  std::lock_guard lock(planner_mutex());
  fftw_destroy_plan(static_cast<fftw_plan>(forward_plan_));
  fftw_destroy_plan(static_cast<fftw_plan>(backward_plan_));
}

void FftPlan::forward(std::span<cplx> data) const {
  fftw_execute_dft(static_cast<fftw_plan>(forward_plan_), as_fftw(data.data()),
                   as_fftw(data.data()));
}

void FftPlan::backward(std::span<cplx> data) const {
  fftw_execute_dft(static_cast<fftw_plan>(backward_plan_), as_fftw(data.data()),
                   as_fftw(data.data()));
}

const FftPlan& plan_for(int n) {
  // The mutex must outlive the cache: plans lock it while being destroyed.
  std::mutex& mutex = planner_mutex();
  static std::map<int, std::unique_ptr<FftPlan>> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(n);
  if (it == cache.end()) {
    it = cache.emplace(n, std::make_unique<FftPlan>(n)).first;
  }
  return *it->second;
}

}  // namespace detail

// Natural ordering puts site j = m - M at index m, mode k = l - M at index l.
// Then e^{-ikx_j} = (-1)^{l+m+M} e^{-2 pi i lm / 2M}, so the transform is an
// ordinary FFT between two (-1)^index twiddles.

Field forward_dft(const Field& f) {
  f.require(Representation::Physical, "forward_dft");
  const Lattice& lat = f.lattice();
  const int n = lat.size();
  std::vector<cplx> data(f.values().begin(), f.values().end());
  for (int m = 1; m < n; m += 2) data[m] = -data[m];
  detail::plan_for(n).forward(data);
  const double h = lat.h();
  const int parity = lat.M() & 1;
  for (int l = 0; l < n; ++l) {
    data[l] *= ((l + parity) & 1) ? -h : h;
  }
  return Field(lat, std::move(data), Representation::Frequency);
}

Field inverse_dft(const Field& g) {
  g.require(Representation::Frequency, "inverse_dft");
  const Lattice& lat = g.lattice();
  const int n = lat.size();
  std::vector<cplx> data(g.values().begin(), g.values().end());
  for (int l = 1; l < n; l += 2) data[l] = -data[l];
  detail::plan_for(n).backward(data);
  const double scale = 1.0 / kTwoPi;
  const int parity = lat.M() & 1;
  for (int m = 0; m < n; ++m) {
    data[m] *= ((m + parity) & 1) ? -scale : scale;
  }
  return Field(lat, std::move(data), Representation::Physical);
}

Field to_frequency(const Field& f) {
  return f.is_physical() ? forward_dft(f) : f;
}

Field to_physical(const Field& f) {
  return f.is_physical() ? f : inverse_dft(f);
}

}  // namespace fdnls
