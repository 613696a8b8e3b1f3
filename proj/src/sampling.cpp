#include "histomerge/sampling.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <string>

#include "histomerge/error.hpp"
#include "histomerge/kernels.hpp"

namespace histomerge {

std::vector<Value> sample_partition(std::span<const Value> values, const SampleSpec& spec) {
  const std::size_t n = values.size();
  if (n < 2) {
    throw DomainError("sample_partition: need at least 2 values, got " + std::to_string(n));
  }
  if (spec.sample_size < 2) {
    throw DomainError("sample_partition: sample size must be at least 2");
  }
  if (spec.sample_size >= n) {
    return {values.begin(), values.end()};
  }

  // First occurrence of the minimum and last occurrence of the maximum are
  // distinct positions whenever n >= 2.
  const auto min_pos = static_cast<std::size_t>(std::min_element(values.begin(), values.end()) - values.begin());
  const auto max_pos = static_cast<std::size_t>(
      values.rend() - std::max_element(values.rbegin(), values.rend()) - 1);

  const std::size_t reservoir_size = spec.sample_size - 2;
  std::vector<Value> sample;
  sample.reserve(spec.sample_size);
  sample.push_back(values[min_pos]);
  sample.push_back(values[max_pos]);

  std::mt19937_64 rng(spec.rng_seed);
  std::size_t seen = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (i == min_pos || i == max_pos) continue;
    if (seen < reservoir_size) {
      sample.push_back(values[i]);
    } else {
      std::uniform_int_distribution<std::size_t> pick(0, seen);
      const std::size_t slot = pick(rng);
      if (slot < reservoir_size) sample[2 + slot] = values[i];
    }
    ++seen;
  }
  return sample;
}

std::vector<std::vector<Value>> sample_partitions(std::span<const std::vector<Value>> partitions,
                                                  const SampleSpec& spec, int workers) {
  std::vector<std::vector<Value>> samples(partitions.size());
  const auto failures = kernels::for_each_index(partitions.size(), workers, [&](std::size_t i) {
    SampleSpec local = spec;
    local.rng_seed = spec.rng_seed ^ static_cast<std::uint64_t>(i);
    samples[i] = sample_partition(partitions[i], local);
  });
  for (const auto& failure : failures) {
    if (failure) std::rethrow_exception(failure);
  }
  return samples;
}

Histogram build_sampled_histogram(std::span<const std::vector<Value>> samples, std::size_t beta,
                                  Count total_n) {
  std::vector<Value> pool;
  for (const auto& sample : samples) pool.insert(pool.end(), sample.begin(), sample.end());
  if (pool.size() < beta) {
    throw DomainError("build_sampled_histogram: pooled sample of " + std::to_string(pool.size()) +
                      " is smaller than beta " + std::to_string(beta));
  }

  const Histogram sampled = build_exact(pool, beta);
  const Count pooled = sampled.total();
  if (pooled == total_n) return sampled;

  // Largest-remainder rescale: floor shares first, then hand the leftover
  // units to the largest fractional parts (ties to the lower bucket index).
  using Wide = unsigned __int128;
  std::vector<Count> sizes(beta + 1, 0);
  std::vector<std::pair<Count, std::size_t>> remainders;
  remainders.reserve(beta);
  Count assigned = 0;
  for (std::size_t i = 0; i < beta; ++i) {
    const Wide scaled = Wide{sampled.sizes()[i]} * total_n;
    sizes[i] = static_cast<Count>(scaled / pooled);
    remainders.emplace_back(static_cast<Count>(scaled % pooled), i);
    assigned += sizes[i];
  }
  std::stable_sort(remainders.begin(), remainders.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  for (Count left = total_n - assigned, r = 0; left > 0; --left, ++r) {
    ++sizes[remainders[r].second];
  }

  std::vector<Value> boundaries(sampled.boundaries().begin(), sampled.boundaries().end());
  return Histogram(std::move(boundaries), std::move(sizes));
}

}  // namespace histomerge
