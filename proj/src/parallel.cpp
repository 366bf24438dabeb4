#include "boltzlab/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

namespace boltzlab {

namespace {
int g_threads = 0;
}

void set_thread_count(int n) { g_threads = n; }

int thread_count() {
  if (g_threads > 0) return g_threads;
  unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

std::size_t block_count_for(std::size_t n_items) {
  if (n_items == 0) return 0;
  // fixed-size blocks; count depends only on the item count
  const std::size_t target = 16;
  return std::min(n_items, std::max<std::size_t>(1, (n_items + target - 1) / target) > 64
                               ? std::size_t{64}
                               : std::max<std::size_t>(1, (n_items + target - 1) / target));
}

void parallel_blocks(std::size_t n_items,
                     const std::function<void(std::size_t, std::size_t, std::size_t)>& fn) {
  const std::size_t nb = block_count_for(n_items);
  if (nb == 0) return;
  const int nt = std::min<int>(thread_count(), static_cast<int>(nb));
  if (nt <= 1) {
    for (std::size_t b = 0; b < nb; ++b) {
      std::size_t lo = b * n_items / nb, hi = (b + 1) * n_items / nb;
      fn(b, lo, hi);
    }
    return;
  }
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      std::size_t b = next.fetch_add(1);
      if (b >= nb) break;
      std::size_t lo = b * n_items / nb, hi = (b + 1) * n_items / nb;
      fn(b, lo, hi);
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(nt - 1);
  for (int t = 1; t < nt; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
}

double combine_blocks(const std::vector<double>& partials) {
  // pairwise tree, fixed structure
  std::vector<double> cur(partials);
  while (cur.size() > 1) {
    std::vector<double> nxt((cur.size() + 1) / 2);
    for (std::size_t i = 0; i + 1 < cur.size(); i += 2) nxt[i / 2] = cur[i] + cur[i + 1];
    if (cur.size() % 2) nxt.back() = cur.back();
    cur.swap(nxt);
  }
  return cur.empty() ? 0.0 : cur[0];
}

}  // namespace boltzlab
