#include "nwidth/parallel.hpp"

#include <atomic>

namespace nwidth::par {

namespace {

bool initial_enabled() {
#ifdef _OPENMP
  const char* env = std::getenv("NWIDTH_SERIAL");
  return !(env != nullptr && env[0] == '1');
#else
  return false;
#endif
}

std::atomic<bool>& flag() {
  static std::atomic<bool> value{initial_enabled()};
  return value;
}

}  // namespace

bool enabled() { return flag().load(std::memory_order_relaxed); }

void set_enabled(bool on) {
#ifndef _OPENMP
  on = false;
#endif
  flag().store(on, std::memory_order_relaxed);
}

int worker_count() {
#ifdef _OPENMP
  return enabled() ? omp_get_max_threads() : 1;
#else
  return 1;
#endif
}

}  // namespace nwidth::par
