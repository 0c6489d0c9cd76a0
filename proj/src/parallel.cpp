#include "norm1lat/parallel.hpp"

#include <cstdlib>
#include <string>

namespace norm1lat {

namespace {
std::atomic<std::size_t> g_override{0};
}

std::size_t thread_count() {
  if (std::size_t o = g_override.load()) return o;
  if (const char* env = std::getenv("NORM1LAT_THREADS")) {
    try {
      long v = std::stol(env);
      if (v >= 1) return static_cast<std::size_t>(v);
    } catch (...) {
    }
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? hw : 1;
}

void set_thread_count(std::size_t n) { g_override.store(n); }

}  // namespace norm1lat
