#include "nbamp/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace nbamp {
namespace {

unsigned threads_from_env() {
  if (const char* env = std::getenv("NONBOOL_AMP_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v > 0) return static_cast<unsigned>(v);
    } catch (...) {
      // ignored: fall back to hardware concurrency
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::atomic<unsigned>& thread_cap() {
  static std::atomic<unsigned> cap{threads_from_env()};
  return cap;
}

}  // namespace

unsigned max_threads() { return thread_cap().load(); }

void set_max_threads(unsigned n) { thread_cap().store(std::max(1u, n)); }

void parallel_for(std::size_t count, const std::function<void(std::size_t, std::size_t)>& body,
                  std::size_t min_chunk) {
  if (count == 0) return;
  min_chunk = std::max<std::size_t>(1, min_chunk);
  const std::size_t by_work = (count + min_chunk - 1) / min_chunk;
  const std::size_t workers = std::min<std::size_t>(max_threads(), by_work);
  if (workers <= 1) {
    body(0, count);
    return;
  }
  const std::size_t chunk = (count + workers - 1) / workers;
  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  for (std::size_t w = 1; w < workers; ++w) {
    const std::size_t begin = w * chunk;
    const std::size_t end = std::min(count, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([&body, begin, end] { body(begin, end); });
  }
  body(0, std::min(count, chunk));
  for (auto& t : pool) t.join();
}

}  // namespace nbamp
