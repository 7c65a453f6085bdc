#pragma once

#include <cstddef>
#include <vector>

namespace wirealg {

/// Which code path an enumeration kernel runs. The parallel path
/// partitions the index space into fixed chunks, so its result is
/// assembled in chunk order and is identical to the serial one; Auto
/// switches on problem size.
enum class Exec { Serial, Parallel, Auto };

/// Work below this many enumerated entries stays serial under Auto.
inline constexpr std::size_t kParallelThreshold = 1 << 14;

bool run_parallel(Exec exec, std::size_t work);

/// Splits [0, n) into at most max_chunks contiguous ranges.
std::vector<std::pair<std::size_t, std::size_t>> chunk_ranges(
    std::size_t n, std::size_t max_chunks = 64);

}  // namespace wirealg
