#pragma once

#include <numbers>

namespace fdnls {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Periodic lattice T_h = {h j : j = -M..M-1} with h = pi / M, and its dual
/// {k = -M..M-1}. Only M is stored; h is always derived from it.
class Lattice {
 public:
  explicit Lattice(int half_sites);

  int M() const noexcept { return m_; }
  double h() const noexcept { return kPi / m_; }
  int size() const noexcept { return 2 * m_; }

  double site(int j) const noexcept { return h() * j; }
  double site_at_index(int i) const noexcept { return h() * (i - m_); }

  int index_of_site(int j) const noexcept { return j + m_; }
  int index_of_mode(int k) const noexcept { return k + m_; }
  int mode_at_index(int i) const noexcept { return i - m_; }

  bool contains_mode(long k) const noexcept { return k >= -m_ && k < m_; }
  /// Representative of k modulo 2M in [-M, M).
  int wrap_mode(long k) const noexcept;

  friend bool operator==(const Lattice&, const Lattice&) = default;

 private:
  int m_;
};

/// Levy index alpha and nonlinearity sign mu of the lattice / torus model.
struct ModelParams {
  double alpha = 2.0;
  int mu = -1;

  /// alpha in (0,2] and mu in {-1,+1}; throws DomainError otherwise.
  void validate() const;
  /// Stricter range alpha in (1,2] used by the convergence and dispersive
  /// modules. `who` names the caller in the error message.
  void require_dispersive_range(const char* who) const;

  bool focusing() const noexcept { return mu < 0; }
};

}  // namespace fdnls
