#pragma once

#include <cstddef>
#include <exception>
#include <functional>
#include <span>
#include <vector>

namespace divorb {

// DIVORB_THREADS if set to a positive integer, else the hardware count.
std::size_t worker_count();

// Runs fn(i) for i in [0, count) on worker_count() threads with static
// chunking. The first exception thrown by any worker is rethrown.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

template <class T, class F>
std::vector<T> parallel_map(std::size_t count, F&& fn) {
  std::vector<T> out(count);
  parallel_for(count, [&](std::size_t i) { out[i] = fn(i); });
  return out;
}

// Neumaier-compensated sum in index order, independent of thread count.
double stable_sum(std::span<const double> values);

}  // namespace divorb
