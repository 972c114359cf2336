#include "tantra/kernels.hpp"

#include <algorithm>

#include <omp.h>

namespace tantra::kernels {

namespace {

bool has_numeric_property(const Element& e) {
  if (e.aspect() == Aspect::Why) return false;
  return std::any_of(e.properties().begin(), e.properties().end(),
                     [](const auto& kv) { return is_numeric(kv.second); });
}

template <typename Pred>
std::vector<std::size_t> select_serial(std::span<const Element* const> elements, Pred pred) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < elements.size(); ++i) {
    if (pred(*elements[i])) out.push_back(i);
  }
  return out;
}

// Each thread keeps a private hit list; lists are concatenated in thread
// order, which with a static schedule is already ascending.
template <typename Pred>
std::vector<std::size_t> select_parallel(std::span<const Element* const> elements, Pred pred) {
  const auto n = static_cast<long long>(elements.size());
  std::vector<std::vector<std::size_t>> per_thread(static_cast<std::size_t>(omp_get_max_threads()));
#pragma omp parallel
  {
    auto& local = per_thread[static_cast<std::size_t>(omp_get_thread_num())];
#pragma omp for schedule(static)
    for (long long i = 0; i < n; ++i) {
      if (pred(*elements[static_cast<std::size_t>(i)])) local.push_back(static_cast<std::size_t>(i));
    }
  }
  std::vector<std::size_t> out;
  for (auto& v : per_thread) out.insert(out.end(), v.begin(), v.end());
  return out;
}

}  // namespace

CoverageMatrix coverage_serial(std::span<const Element* const> elements) {
  CoverageMatrix m{};
  for (const Element* e : elements) ++m[index_of(e->aspect())][index_of(e->perspective())];
  return m;
}

CoverageMatrix coverage_parallel(std::span<const Element* const> elements) {
  constexpr std::size_t kCells = kAspectCount * kPerspectiveCount;
  std::array<std::size_t, kCells> flat{};
  const auto n = static_cast<long long>(elements.size());
#pragma omp parallel
  {
    std::array<std::size_t, kCells> local{};
#pragma omp for schedule(static) nowait
    for (long long i = 0; i < n; ++i) {
      const Element* e = elements[static_cast<std::size_t>(i)];
      ++local[index_of(e->aspect()) * kPerspectiveCount + index_of(e->perspective())];
    }
#pragma omp critical(tantra_coverage)
    for (std::size_t c = 0; c < kCells; ++c) flat[c] += local[c];
  }
  CoverageMatrix m{};
  for (std::size_t a = 0; a < kAspectCount; ++a) {
    for (std::size_t p = 0; p < kPerspectiveCount; ++p) m[a][p] = flat[a * kPerspectiveCount + p];
  }
  return m;
}

std::vector<std::size_t> numeric_on_non_why_serial(std::span<const Element* const> elements) {
  return select_serial(elements, has_numeric_property);
}

std::vector<std::size_t> numeric_on_non_why_parallel(std::span<const Element* const> elements) {
  return select_parallel(elements, has_numeric_property);
}

std::vector<std::size_t> incomplete_serial(std::span<const Element* const> elements) {
  return select_serial(elements, [](const Element& e) { return !missing_payload(e).empty(); });
}

std::vector<std::size_t> incomplete_parallel(std::span<const Element* const> elements) {
  return select_parallel(elements, [](const Element& e) { return !missing_payload(e).empty(); });
}

}  // namespace tantra::kernels
