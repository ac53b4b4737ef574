#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace nillab {

/// Worker count: NILLAB_THREADS if set and positive, else the hardware count.
int worker_count();

/// Sums `width` accumulators over samples [0, count). `block(begin, end, acc)`
/// adds the contribution of a sample range into acc (zeroed by the caller).
/// Blocks of kSampleBlock samples are combined by a pairwise tree whose shape
/// depends only on `count`, so the result is bitwise independent of the
/// number of workers.
inline constexpr std::size_t kSampleBlock = 256;

std::vector<double> deterministic_sum(std::size_t count, std::size_t width,
                                      const std::function<void(std::size_t, std::size_t, double*)>& block);

}  // namespace nillab
