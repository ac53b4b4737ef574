#include "nillab/spectral/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>

namespace nillab {

namespace {

constexpr std::size_t kBlocksPerChunk = 16;

// In-place pairwise tree over `n` rows of `width`, result in row 0.
void tree_reduce(std::vector<double>& rows, std::size_t n, std::size_t width) {
  for (std::size_t stride = 1; stride < n; stride *= 2)
    for (std::size_t i = 0; i + stride < n; i += 2 * stride) {
      double* a = rows.data() + i * width;
      const double* b = rows.data() + (i + stride) * width;
      for (std::size_t k = 0; k < width; ++k) a[k] += b[k];
    }
}

}  // namespace

int worker_count() {
  if (const char* env = std::getenv("NILLAB_THREADS")) {
    try {
      int n = std::stoi(env);
      if (n > 0) return n;
    } catch (const std::exception&) {
    }
  }
  return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

std::vector<double> deterministic_sum(std::size_t count, std::size_t width,
                                      const std::function<void(std::size_t, std::size_t, double*)>& block) {
  const std::size_t chunk_size = kSampleBlock * kBlocksPerChunk;
  const std::size_t chunks = (count + chunk_size - 1) / chunk_size;
  std::vector<double> chunk_sums(std::max<std::size_t>(chunks, 1) * width, 0.0);

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    std::vector<double> rows(kBlocksPerChunk * width);
    for (;;) {
      const std::size_t c = next.fetch_add(1);
      if (c >= chunks) return;
      try {
        std::fill(rows.begin(), rows.end(), 0.0);
        const std::size_t begin = c * chunk_size;
        std::size_t n = 0;
        for (std::size_t b = begin; b < std::min(count, begin + chunk_size); b += kSampleBlock, ++n)
          block(b, std::min(count, b + kSampleBlock), rows.data() + n * width);
        tree_reduce(rows, n, width);
        std::copy(rows.begin(), rows.begin() + static_cast<std::ptrdiff_t>(width),
                  chunk_sums.begin() + static_cast<std::ptrdiff_t>(c * width));
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = chunks;
        return;
      }
    }
  };
  const int workers = static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(worker_count()), chunks));
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (int i = 0; i < workers; ++i) pool.emplace_back(work);
  }
  if (failure) std::rethrow_exception(failure);
  tree_reduce(chunk_sums, chunks, width);
  chunk_sums.resize(width);
  return chunk_sums;
}

}  // namespace nillab
