#include "histomerge/kernels.hpp"

#include <omp.h>

#include <algorithm>
#include <optional>

namespace histomerge::kernels {

int resolve_workers(int workers) { return workers >= 1 ? workers : omp_get_max_threads(); }

std::vector<std::exception_ptr> for_each_index(std::size_t n, int workers,
                                               const std::function<void(std::size_t)>& fn) {
  std::vector<std::exception_ptr> failures(n);
  const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(dynamic, 1) num_threads(resolve_workers(workers))
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    try {
      fn(static_cast<std::size_t>(i));
    } catch (...) {
      failures[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  return failures;
}

namespace {

void rethrow_first(const std::vector<std::exception_ptr>& failures) {
  for (const auto& failure : failures) {
    if (failure) std::rethrow_exception(failure);
  }
}

}  // namespace

std::vector<Histogram> build_exact_each(std::span<const std::vector<Value>> partitions,
                                        std::size_t t, int workers) {
  std::vector<std::optional<Histogram>> slots(partitions.size());
  rethrow_first(for_each_index(partitions.size(), workers, [&](std::size_t i) {
    slots[i].emplace(build_exact(partitions[i], t));
  }));

  std::vector<Histogram> out;
  out.reserve(slots.size());
  for (auto& slot : slots) out.push_back(std::move(*slot));
  return out;
}

std::vector<Histogram> build_exact_each_serial(std::span<const std::vector<Value>> partitions,
                                               std::size_t t) {
  std::vector<Histogram> out;
  out.reserve(partitions.size());
  for (const auto& partition : partitions) out.push_back(build_exact(partition, t));
  return out;
}

std::vector<Value> sorted_union(std::span<const std::vector<Value>> partitions, int workers) {
  const int threads = resolve_workers(workers);

  // Run r occupies [offsets[r], offsets[r+1]).
  std::vector<std::size_t> offsets{0};
  for (const auto& partition : partitions) offsets.push_back(offsets.back() + partition.size());

  std::vector<Value> data(offsets.back());
  const auto runs = static_cast<std::ptrdiff_t>(partitions.size());
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
  for (std::ptrdiff_t r = 0; r < runs; ++r) {
    auto first = data.begin() + static_cast<std::ptrdiff_t>(offsets[r]);
    std::copy(partitions[r].begin(), partitions[r].end(), first);
    std::sort(first, first + static_cast<std::ptrdiff_t>(partitions[r].size()));
  }

  std::vector<Value> buffer(data.size());
  while (offsets.size() > 2) {
    const std::size_t run_count = offsets.size() - 1;
    const auto pairs = static_cast<std::ptrdiff_t>((run_count + 1) / 2);
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
    for (std::ptrdiff_t p = 0; p < pairs; ++p) {
      const std::size_t left = 2 * static_cast<std::size_t>(p);
      const auto begin = static_cast<std::ptrdiff_t>(offsets[left]);
      const auto middle = static_cast<std::ptrdiff_t>(offsets[left + 1]);
      const auto end = static_cast<std::ptrdiff_t>(offsets[std::min(left + 2, run_count)]);
      std::merge(data.begin() + begin, data.begin() + middle, data.begin() + middle,
                 data.begin() + end, buffer.begin() + begin);
    }
    std::vector<std::size_t> merged_offsets;
    for (std::size_t i = 0; i < offsets.size(); i += 2) merged_offsets.push_back(offsets[i]);
    if (merged_offsets.back() != offsets.back()) merged_offsets.push_back(offsets.back());
    offsets = std::move(merged_offsets);
    data.swap(buffer);
  }
  return data;
}

std::vector<Value> sorted_union_serial(std::span<const std::vector<Value>> partitions) {
  std::vector<Value> data;
  for (const auto& partition : partitions) data.insert(data.end(), partition.begin(), partition.end());
  std::sort(data.begin(), data.end());
  return data;
}

}  // namespace histomerge::kernels
