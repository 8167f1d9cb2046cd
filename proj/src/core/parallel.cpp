#include "bollobas/parallel.hpp"

#include <cstdlib>
#include <string>

namespace bl {

namespace {
std::atomic<int> g_threads{0};

int env_threads() {
  const char* v = std::getenv("BOLLOBAS_LAB_THREADS");
  if (!v) return 1;
  try {
    int n = std::stoi(v);
    return n > 0 ? n : 1;
  } catch (...) {
    return 1;
  }
}
}  // namespace

int thread_count() {
  int n = g_threads.load();
  return n > 0 ? n : env_threads();
}

void set_thread_count(int n) { g_threads.store(n > 0 ? n : 0); }

std::mt19937_64 item_rng(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{std::uint32_t(seed), std::uint32_t(seed >> 32), std::uint32_t(index),
                    std::uint32_t(index >> 32), 0x5eedu};
  return std::mt19937_64(seq);
}

void parallel_for(int n, const std::function<void(int)>& body) {
  int t = std::min(thread_count(), n);
  if (t <= 1) {
    for (int i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr err;
  std::mutex err_mu;
  std::vector<std::thread> pool;
  for (int k = 0; k < t; ++k) {
    pool.emplace_back([&] {
      for (;;) {
        int i = next.fetch_add(1);
        if (i >= n) return;
        try {
          body(i);
        } catch (...) {
          std::lock_guard<std::mutex> lk(err_mu);
          if (!err) err = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (err) std::rethrow_exception(err);
}

}  // namespace bl
