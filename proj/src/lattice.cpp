#include "fdnls/lattice.hpp"

#include <string>

#include "fdnls/errors.hpp"

namespace fdnls {

Lattice::Lattice(int half_sites) : m_(half_sites) {
  if (half_sites < 1) {
    throw DomainError("lattice needs M >= 1, got " + std::to_string(half_sites));
  }
}

int Lattice::wrap_mode(long k) const noexcept {
  const long period = 2L * m_;
  long r = (k + m_) % period;
  if (r < 0) r += period;
  return static_cast<int>(r - m_);
}

void ModelParams::validate() const {
  if (!(alpha > 0.0 && alpha <= 2.0)) {
    throw DomainError("alpha must lie in (0,2], got " + std::to_string(alpha));
  }
  if (mu != -1 && mu != 1) {
    throw DomainError("mu must be -1 or +1, got " + std::to_string(mu));
  }
}

void ModelParams::require_dispersive_range(const char* who) const {
  validate();
  if (!(alpha > 1.0)) {
    throw DomainError(std::string(who) +
                      ": alpha must lie in (1,2] (continuum-limit and "
                      "dispersive estimates need alpha > 1), got " +
                      std::to_string(alpha));
  }
}

}  // namespace fdnls
