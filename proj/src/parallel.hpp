#pragma once

#include <cstdint>
#include <exception>
#include <thread>
#include <vector>

#include "sicnet/montecarlo.hpp"

namespace sicnet::detail {

using Counts = std::vector<std::uint64_t>;

/// Splits [0, trials) into contiguous chunks, one per thread. body(begin, end,
/// counts) must derive all randomness from the trial index, so the summed
/// counts do not depend on the thread count.
template <class Body>
Counts run_trials(std::uint64_t trials, unsigned threads, std::size_t slots, Body body) {
  threads = resolve_threads(threads);
  if (trials < threads) threads = trials == 0 ? 1u : static_cast<unsigned>(trials);
  std::vector<Counts> parts(threads, Counts(slots, 0));
  std::vector<std::exception_ptr> errors(threads);
  auto chunk = [&](unsigned t) {
    const std::uint64_t begin = trials * t / threads;
    const std::uint64_t end = trials * (t + 1) / threads;
    try {
      body(begin, end, parts[t]);
    } catch (...) {
      errors[t] = std::current_exception();
    }
  };
  if (threads == 1) {
    chunk(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(chunk, t);
    for (auto& th : pool) th.join();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  Counts total(slots, 0);
  for (const auto& p : parts) {
    for (std::size_t i = 0; i < slots; ++i) total[i] += p[i];
  }
  return total;
}

}  // namespace sicnet::detail
