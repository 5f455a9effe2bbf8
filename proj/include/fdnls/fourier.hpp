#pragma once

#include <span>

#include "fdnls/field.hpp"

namespace fdnls {

/// F_h f(k) = h * sum_x f(x) e^{-ikx}. Requires a Physical field.
Field forward_dft(const Field& f);

/// F_h^{-1} g(x) = (2 pi)^{-1} * sum_k g(k) e^{ikx}. Requires a Frequency field.
Field inverse_dft(const Field& g);

/// Returns f in the requested representation, transforming only if needed.
Field to_frequency(const Field& f);
Field to_physical(const Field& f);

namespace detail {

/// Unnormalized in-place complex FFT of a fixed length, FFTW backed. Plans are
/// shared through a process-wide cache; execution is safe from any thread.
class FftPlan {
 public:
  explicit FftPlan(int n);
  ~FftPlan();
  FftPlan(const FftPlan&) = delete;
  FftPlan& operator=(const FftPlan&) = delete;

  int size() const noexcept { return n_; }
  /// data[m] <- sum_j data[j] e^{-2 pi i jm/n}
  void forward(std::span<cplx> data) const;
  /// data[m] <- sum_j data[j] e^{+2 pi i jm/n}
  void backward(std::span<cplx> data) const;

 private:
  int n_;
  void* forward_plan_;
  void* backward_plan_;
};

const FftPlan& plan_for(int n);

}  // namespace detail
}  // namespace fdnls
