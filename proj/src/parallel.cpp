#include <cstdlib>
#include <string>
#include <thread>

#include "lensspec/search.hpp"

namespace lensspec::search {

unsigned default_threads() {
  if (const char* env = std::getenv("LENSSPEC_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v >= 1) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
      // fall through to the hardware default
    }
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

}  // namespace lensspec::search
