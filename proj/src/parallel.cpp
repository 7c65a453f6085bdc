#include "wirealg/parallel.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace wirealg {

bool run_parallel(Exec exec, std::size_t work) {
#ifdef _OPENMP
  switch (exec) {
    case Exec::Serial:
      return false;
    case Exec::Parallel:
      return true;
    case Exec::Auto:
      return work >= kParallelThreshold && omp_get_max_threads() > 1;
  }
#else
  (void)exec;
  (void)work;
#endif
  return false;
}

std::vector<std::pair<std::size_t, std::size_t>> chunk_ranges(
    std::size_t n, std::size_t max_chunks) {
  std::vector<std::pair<std::size_t, std::size_t>> ranges;
  if (n == 0) return ranges;
  const std::size_t chunks = std::min(max_chunks, n);
  const std::size_t base = n / chunks;
  const std::size_t extra = n % chunks;
  std::size_t begin = 0;
  for (std::size_t c = 0; c < chunks; ++c) {
    std::size_t len = base + (c < extra ? 1 : 0);
    ranges.emplace_back(begin, begin + len);
    begin += len;
  }
  return ranges;
}

}  // namespace wirealg
