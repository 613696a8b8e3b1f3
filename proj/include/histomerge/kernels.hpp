#pragma once

#include <cstddef>
#include <exception>
#include <functional>
#include <span>
#include <vector>

#include "histomerge/histogram.hpp"

// OpenMP data-parallel kernels. Each has a *_serial twin that the tests use
// as the reference; both must produce identical results for any worker count.
namespace histomerge::kernels {

/// Resolves a requested worker count; values < 1 mean "OpenMP default".
int resolve_workers(int workers);

/// Runs fn(i) for i in [0, n) on up to `workers` threads. An exception
/// thrown by fn(i) is captured into slot i of the result instead of escaping.
std::vector<std::exception_ptr> for_each_index(std::size_t n, int workers,
                                               const std::function<void(std::size_t)>& fn);

/// build_exact on every partition, one partition per task.
std::vector<Histogram> build_exact_each(std::span<const std::vector<Value>> partitions,
                                        std::size_t t, int workers);
std::vector<Histogram> build_exact_each_serial(std::span<const std::vector<Value>> partitions,
                                               std::size_t t);

/// Ascending concatenation of all partitions: sorts each partition in
/// parallel, then merges runs pairwise in parallel rounds.
std::vector<Value> sorted_union(std::span<const std::vector<Value>> partitions, int workers);
std::vector<Value> sorted_union_serial(std::span<const std::vector<Value>> partitions);

}  // namespace histomerge::kernels
