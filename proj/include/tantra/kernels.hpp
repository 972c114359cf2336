#pragma once
// Data-parallel scans over element snapshots. Each kernel has a serial
// reference and an OpenMP version; tests hold them equal and the bench
// target compares their throughput.

#include <array>
#include <cstddef>
#include <exception>
#include <span>
#include <vector>

#include "tantra/model.hpp"

namespace tantra {

enum class Execution { Serial, Parallel };

using CoverageMatrix = std::array<std::array<std::size_t, kPerspectiveCount>, kAspectCount>;

namespace kernels {

CoverageMatrix coverage_serial(std::span<const Element* const> elements);
CoverageMatrix coverage_parallel(std::span<const Element* const> elements);

// Indices (into `elements`) of non-Why elements carrying a numeric
// property, ascending.
std::vector<std::size_t> numeric_on_non_why_serial(std::span<const Element* const> elements);
std::vector<std::size_t> numeric_on_non_why_parallel(std::span<const Element* const> elements);

// Indices whose element misses payload for its perspective, ascending.
std::vector<std::size_t> incomplete_serial(std::span<const Element* const> elements);
std::vector<std::size_t> incomplete_parallel(std::span<const Element* const> elements);

template <typename Pred>
std::size_t count_if_serial(std::size_t n, Pred&& pred) {
  std::size_t count = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (pred(i)) ++count;
  }
  return count;
}

template <typename Pred>
std::size_t count_if_parallel(std::size_t n, Pred&& pred) {
  std::size_t count = 0;
  const auto total = static_cast<long long>(n);
#pragma omp parallel for reduction(+ : count) schedule(dynamic, 64)
  for (long long i = 0; i < total; ++i) {
    if (pred(static_cast<std::size_t>(i))) ++count;
  }
  return count;
}

template <typename Pred>
std::size_t count_if(Execution ex, std::size_t n, Pred&& pred) {
  return ex == Execution::Parallel ? count_if_parallel(n, pred) : count_if_serial(n, pred);
}

// Calls fn(i) for i in [0, n); fn must only write state owned by slot i.
// The first exception thrown by any slot is rethrown after the loop.
template <typename Fn>
void for_each_index(Execution ex, std::size_t n, Fn&& fn) {
  if (ex == Execution::Serial) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::exception_ptr failure;
  const auto total = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic, 16)
  for (long long i = 0; i < total; ++i) {
    try {
      fn(static_cast<std::size_t>(i));
    } catch (...) {
#pragma omp critical(tantra_for_each_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
}

inline CoverageMatrix coverage(Execution ex, std::span<const Element* const> elements) {
  return ex == Execution::Parallel ? coverage_parallel(elements) : coverage_serial(elements);
}

inline std::vector<std::size_t> numeric_on_non_why(Execution ex,
                                                   std::span<const Element* const> elements) {
  return ex == Execution::Parallel ? numeric_on_non_why_parallel(elements)
                                   : numeric_on_non_why_serial(elements);
}

inline std::vector<std::size_t> incomplete(Execution ex,
                                           std::span<const Element* const> elements) {
  return ex == Execution::Parallel ? incomplete_parallel(elements) : incomplete_serial(elements);
}

}  // namespace kernels
}  // namespace tantra
