#include "hodgehx/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

namespace hodgehx {

namespace {

std::atomic<int> g_cap{0};

int detect_threads() {
  if (const char* env = std::getenv("HODGEHX_THREADS")) {
    int n = std::atoi(env);
    if (n >= 1) return n;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return std::clamp<int>(static_cast<int>(hw), 1, 8);
}

}  // namespace

int max_threads() {
  int cap = g_cap.load(std::memory_order_relaxed);
  if (cap > 0) return cap;
  static const int detected = detect_threads();
  return detected;
}

void set_thread_cap(int n) { g_cap.store(n >= 1 ? n : 0, std::memory_order_relaxed); }

void parallel_for(int n, const std::function<void(int, int)>& fn) {
  if (n <= 0) return;
  int nt = std::min(max_threads(), n);
  if (nt <= 1 || n < 2048) {
    fn(0, n);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(nt);
  int chunk = (n + nt - 1) / nt;
  for (int t = 0; t < nt; ++t) {
    int begin = t * chunk;
    int end = std::min(n, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([&fn, begin, end] { fn(begin, end); });
  }
  for (auto& th : pool) th.join();
}

}  // namespace hodgehx
