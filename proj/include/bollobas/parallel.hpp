#pragma once

#include <atomic>
#include <cstdint>
#include <exception>
#include <functional>
#include <mutex>
#include <random>
#include <thread>
#include <vector>

namespace bl {

// BOLLOBAS_LAB_THREADS unless overridden; at least 1
int thread_count();
void set_thread_count(int n);

// deterministic stream for work item `index` of a run seeded with `seed`
std::mt19937_64 item_rng(std::uint64_t seed, std::uint64_t index);

// runs body(i) for i in [0, n). Results must be written by index.
void parallel_for(int n, const std::function<void(int)>& body);

}  // namespace bl
