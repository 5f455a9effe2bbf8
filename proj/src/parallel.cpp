#include "fdnls/parallel.hpp"

#include <cstdlib>
#include <string>

namespace fdnls {

unsigned worker_count() {
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("FDNLS_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v > 0) return std::min(hw, static_cast<unsigned>(v));
    } catch (...) {
    }
  }
  return hw;
}

}  // namespace fdnls
