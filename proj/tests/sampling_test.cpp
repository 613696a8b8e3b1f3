#include "histomerge/sampling.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "histomerge/error.hpp"
#include "histomerge/metrics.hpp"
#include "test_support.hpp"

namespace histomerge {
namespace {

std::vector<Value> iota_values(Value first, Value last) {
  std::vector<Value> out(static_cast<std::size_t>(last - first + 1));
  std::iota(out.begin(), out.end(), first);
  return out;
}

TEST(SamplePartition, FullSizeReturnsWholeMultiset) {
  const std::vector<Value> values{5, 1, 5, 9, 3};
  auto sample = sample_partition(values, {values.size(), 1});
  EXPECT_EQ(sample, values);
  sample = sample_partition(values, {100, 1});
  EXPECT_EQ(sample, values);
}

TEST(SamplePartition, ContainsEdgesAndHasRequestedSize) {
  const auto values = iota_values(1, 1000);
  const auto sample = sample_partition(values, {10, 42});
  EXPECT_EQ(sample.size(), 10u);
  EXPECT_NE(std::find(sample.begin(), sample.end(), 1), sample.end());
  EXPECT_NE(std::find(sample.begin(), sample.end(), 1000), sample.end());
}

TEST(SamplePartition, WithoutReplacement) {
  const auto values = iota_values(1, 5000);
  auto sample = sample_partition(values, {700, 3});
  std::sort(sample.begin(), sample.end());
  EXPECT_EQ(std::adjacent_find(sample.begin(), sample.end()), sample.end());
}

TEST(SamplePartition, DeterministicPerSeed) {
  std::vector<Value> values = iota_values(1, 100000);
  std::shuffle(values.begin(), values.end(), std::mt19937_64(5));
  EXPECT_EQ(sample_partition(values, {1000, 77}), sample_partition(values, {1000, 77}));
  EXPECT_NE(sample_partition(values, {1000, 77}), sample_partition(values, {1000, 78}));
}

TEST(SamplePartition, AllEqualValues) {
  const std::vector<Value> values(50, 4);
  const auto sample = sample_partition(values, {5, 0});
  EXPECT_EQ(sample, std::vector<Value>(5, 4));
}

TEST(SamplePartition, RejectsTinyInputs) {
  const std::vector<Value> one{1};
  EXPECT_THROW(sample_partition(one, {2, 0}), DomainError);
  const std::vector<Value> two{1, 2};
  EXPECT_THROW(sample_partition(two, {1, 0}), DomainError);
}

TEST(SamplePartition, RoughlyUniformInclusion) {
  // Every non-edge element should be picked with probability (m-2)/(n-2).
  const auto values = iota_values(0, 99);
  std::vector<int> hits(100, 0);
  const int rounds = 4000;
  for (int seed = 0; seed < rounds; ++seed) {
    for (const Value v : sample_partition(values, {12, static_cast<std::uint64_t>(seed)})) {
      ++hits[static_cast<std::size_t>(v)];
    }
  }
  EXPECT_EQ(hits[0], rounds);
  EXPECT_EQ(hits[99], rounds);
  const double expected = rounds * 10.0 / 98.0;
  const double sigma = std::sqrt(expected * (1 - 10.0 / 98.0));
  for (std::size_t i = 1; i < 99; ++i) {
    EXPECT_NEAR(hits[i], expected, 5 * sigma) << "element " << i;
  }
}

TEST(SamplePartitions, IndependentOfWorkerCount) {
  std::mt19937_64 rng(12);
  std::vector<std::vector<Value>> parts;
  for (int j = 0; j < 9; ++j) parts.push_back(testing::uniform_values(rng, 3000, 0, 99999));
  const auto serial = sample_partitions(parts, {200, 5}, 1);
  EXPECT_EQ(sample_partitions(parts, {200, 5}, 4), serial);
  // Partition j uses seed ^ j.
  EXPECT_EQ(serial[3], sample_partition(parts[3], {200, 5 ^ 3}));
}

TEST(BuildSampledHistogram, FullSampleEqualsExact) {
  std::mt19937_64 rng(2);
  const auto data = testing::uniform_values(rng, 5000, -100, 100);
  const std::vector<std::vector<Value>> samples{data};
  EXPECT_EQ(build_sampled_histogram(samples, 17, data.size()), build_exact(data, 17));
}

TEST(BuildSampledHistogram, WorkedExamplePartitionsAtFullSampleSize) {
  const std::vector<std::vector<Value>> samples{
      sample_partition(testing::kP1, {testing::kP1.size(), 1}),
      sample_partition(testing::kP2, {testing::kP2.size(), 2})};
  const Histogram h = build_sampled_histogram(samples, 3, 27);
  EXPECT_EQ(h, Histogram({2, 12, 21, 30}, {9, 9, 9, 0}));
}

TEST(BuildSampledHistogram, RescalesWithLargestRemainder) {
  // Pool of 10 values in 3 buckets (3,3,4) rescaled to 100: shares 30,30,40.
  const std::vector<std::vector<Value>> samples{{1, 2, 3, 4, 5, 6, 7, 8, 9, 10}};
  EXPECT_EQ(build_sampled_histogram(samples, 3, 100).sizes()[0], 30u);
  // Rescaled to 11: exact shares 3.3, 3.3, 4.4 -> floors 3,3,4 plus one unit
  // to the largest remainder (bucket 3 at .4).
  const Histogram h = build_sampled_histogram(samples, 3, 11);
  EXPECT_EQ(std::vector<Count>(h.sizes().begin(), h.sizes().end()), (std::vector<Count>{3, 3, 5, 0}));
}

TEST(BuildSampledHistogram, RescaledSizesSumToTotal) {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t pool = std::uniform_int_distribution<std::size_t>(5, 500)(rng);
    const std::size_t beta = std::uniform_int_distribution<std::size_t>(1, pool)(rng);
    const Count total = std::uniform_int_distribution<Count>(1, 10'000'000)(rng);
    const std::vector<std::vector<Value>> samples{testing::uniform_values(rng, pool, 0, 1000)};
    ASSERT_EQ(build_sampled_histogram(samples, beta, total).total(), total);
  }
}

TEST(BuildSampledHistogram, RejectsPoolSmallerThanBeta) {
  const std::vector<std::vector<Value>> samples{{1, 2}, {3}};
  EXPECT_THROW(build_sampled_histogram(samples, 4, 10), DomainError);
}

TEST(BuildSampledHistogram, TenPercentSampleSizeErrorWithinNoiseEnvelope) {
  std::vector<Value> data = iota_values(1, 100000);
  std::shuffle(data.begin(), data.end(), std::mt19937_64(9));
  const std::size_t sample_size = 10000;
  const std::vector<std::vector<Value>> samples{sample_partition(data, {sample_size, 2024})};
  const Histogram sampled = build_sampled_histogram(samples, 254, data.size());

  // Size error of the buckets the sampled boundaries actually induce on the data.
  const auto counts = testing::true_bucket_counts(sampled, data);
  std::vector<Value> bounds(sampled.boundaries().begin(), sampled.boundaries().end());
  std::vector<Count> sizes(counts.begin(), counts.end());
  sizes.push_back(0);
  const double mu_s = size_error(Histogram(bounds, sizes), data.size());
  EXPECT_LT(mu_s, 3.0 * 254 / std::sqrt(static_cast<double>(sample_size)));
  EXPECT_GT(mu_s, 0.0);
}

}  // namespace
}  // namespace histomerge
