#pragma once

#include <cstddef>
#include <cstdlib>
#include <utility>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace nwidth::par {

/// Whether the OpenMP path is active. Defaults to true when compiled with
/// OpenMP; NWIDTH_SERIAL=1 in the environment or set_enabled(false) forces the
/// serial reference path. Both paths produce identical results by contract.
bool enabled();
void set_enabled(bool on);
int worker_count();

/// Splits [0, count) into fixed-size chunks, evaluates chunk_fn on each chunk
/// (possibly concurrently) and folds the per-chunk results in ascending chunk
/// order. The fold order is what makes the parallel result match the serial
/// one exactly, including floating-point rounding.
///
/// chunk_fn: (chunk_index, begin, end) -> T;  combine: (T acc, T part) -> T
template <typename T, typename ChunkFn, typename Combine>
T chunked_reduce(std::size_t count, std::size_t chunk_size, T init,
                 ChunkFn&& chunk_fn, Combine&& combine) {
  if (count == 0) return init;
  if (chunk_size == 0) chunk_size = 1;
  const std::size_t chunks = (count + chunk_size - 1) / chunk_size;
  std::vector<T> parts(chunks, init);
  if (enabled() && chunks > 1) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 1)
#endif
    for (long long c = 0; c < static_cast<long long>(chunks); ++c) {
      const std::size_t begin = static_cast<std::size_t>(c) * chunk_size;
      const std::size_t end = std::min(begin + chunk_size, count);
      parts[static_cast<std::size_t>(c)] =
          chunk_fn(static_cast<std::size_t>(c), begin, end);
    }
  } else {
    for (std::size_t c = 0; c < chunks; ++c) {
      const std::size_t begin = c * chunk_size;
      const std::size_t end = std::min(begin + chunk_size, count);
      parts[c] = chunk_fn(c, begin, end);
    }
  }
  T acc = std::move(parts[0]);
  for (std::size_t c = 1; c < chunks; ++c) acc = combine(std::move(acc), std::move(parts[c]));
  return acc;
}

/// Runs fn(i) for i in [0, count); iterations must be independent.
template <typename Fn>
void parallel_for(std::size_t count, Fn&& fn) {
  if (enabled() && count > 1) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 1)
#endif
    for (long long i = 0; i < static_cast<long long>(count); ++i)
      fn(static_cast<std::size_t>(i));
  } else {
    for (std::size_t i = 0; i < count; ++i) fn(i);
  }
}

/// Best-of search result: keeps the maximal value, breaking ties by the
/// lowest index. chunked_reduce with this combiner reproduces a sequential
/// argmax scan regardless of thread interleaving.
struct BestOf {
  double value = -1e300;
  std::size_t index = static_cast<std::size_t>(-1);

  void offer(double v, std::size_t i) {
    if (v > value || (v == value && i < index)) {
      value = v;
      index = i;
    }
  }
  static BestOf merge(BestOf a, BestOf b) {
    if (b.value > a.value || (b.value == a.value && b.index < a.index)) return b;
    return a;
  }
};

}  // namespace nwidth::par
