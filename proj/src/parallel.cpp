#include "qcount/parallel.hpp"

#include <cstdlib>
#include <string>

namespace qcount {

std::size_t default_thread_count() {
  if (const char* env = std::getenv("QCOUNT_THREADS")) {
    try {
      const long v = std::stol(env);
      return v <= 1 ? 1 : static_cast<std::size_t>(v);
    } catch (...) {
      return 1;
    }
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

}  // namespace qcount
