#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "histomerge/histogram.hpp"

namespace histomerge {

/// Tuple-level sampling parameters; sample_size must be at least 2 so both
/// edge values fit.
struct SampleSpec {
  std::size_t sample_size = 2;
  std::uint64_t rng_seed = 0;
};

/// Uniform sample without replacement of min(sample_size, N) values that
/// always contains the minimum and the maximum of `values`. Single pass
/// reservoir over the non-edge positions, seeded from spec.rng_seed.
std::vector<Value> sample_partition(std::span<const Value> values, const SampleSpec& spec);

/// Samples every partition independently with seed (spec.rng_seed ^ index),
/// so the result does not depend on `workers`.
std::vector<std::vector<Value>> sample_partitions(std::span<const std::vector<Value>> partitions,
                                                  const SampleSpec& spec, int workers = 0);

/// Pools the samples, builds a beta-bucket exact histogram of the pool, then
/// rescales the sizes to sum to total_n using largest-remainder rounding.
Histogram build_sampled_histogram(std::span<const std::vector<Value>> samples, std::size_t beta,
                                  Count total_n);

}  // namespace histomerge
