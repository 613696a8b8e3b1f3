#include "histomerge/histogram.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "histomerge/error.hpp"
#include "test_support.hpp"

namespace histomerge {
namespace {

using testing::h1;
using testing::h2;
using testing::kP1;
using testing::kP2;

// Independent oracle: walk the sorted data rank by rank and open a new
// bucket whenever rank * t crosses the next multiple of N.
Histogram rank_walk_oracle(std::vector<Value> values, std::size_t t) {
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  std::vector<Value> boundaries;
  std::vector<Count> sizes;
  for (std::size_t r = 0; r < n; ++r) {
    // bucket opening at rank r: smallest i with floor(i*n/t) == r for some i
    while (boundaries.size() < t && static_cast<unsigned __int128>(boundaries.size()) * n / t <= r) {
      boundaries.push_back(values[r]);
      sizes.push_back(0);
    }
    ++sizes.back();
  }
  boundaries.push_back(values.back());
  sizes.push_back(0);
  return Histogram(boundaries, sizes);
}

TEST(BuildExact, FirstWorkedExamplePartition) {
  const Histogram h = build_exact(kP1, 3);
  EXPECT_EQ(h, h1());
}

TEST(BuildExact, SecondWorkedExamplePartition) {
  const Histogram h = build_exact(kP2, 3);
  EXPECT_EQ(h, h2());
}

TEST(BuildExact, SingleValueSingleBucket) {
  const std::vector<Value> one{7};
  const Histogram h = build_exact(one, 1);
  EXPECT_EQ(h, Histogram({7, 7}, {1, 0}));
}

TEST(BuildExact, RejectsEmptyInputAndTooManyBuckets) {
  EXPECT_THROW(build_exact({}, 1), DomainError);
  EXPECT_THROW(build_exact(kP1, 0), DomainError);
  EXPECT_THROW(build_exact(kP1, 13), DomainError);
  EXPECT_NO_THROW(build_exact(kP1, 12));
}

TEST(BuildExact, FloorPartitionOnNonDivisibleCount) {
  const std::vector<Value> values{1, 2, 3, 4, 5, 6, 7};
  const Histogram h = build_exact(values, 3);
  // ranks 0, 2, 4 open the buckets: floor(7/3)=2, floor(14/3)=4
  EXPECT_EQ(h, Histogram({1, 3, 5, 7}, {2, 2, 3, 0}));
}

TEST(BuildExact, DuplicatesGiveRepeatedBoundaries) {
  const std::vector<Value> values{5, 5, 5, 5, 5, 5, 9, 9};
  const Histogram h = build_exact(values, 4);
  EXPECT_EQ(h, Histogram({5, 5, 5, 9, 9}, {2, 2, 2, 2, 0}));
}

TEST(HistogramQueries, SizeOfWorkedExamples) {
  EXPECT_EQ(size(h1(), 2), 4u);
  EXPECT_EQ(size(h2(), 3), 5u);
  EXPECT_THROW(size(h1(), 4), DomainError);
  EXPECT_THROW(size(h1(), 0), DomainError);
}

TEST(HistogramQueries, CumulativeOfWorkedExamples) {
  EXPECT_EQ(cumulative(h1(), 2), 8u);
  EXPECT_EQ(cumulative(h2(), 1), 5u);
  EXPECT_EQ(cumulative(h1(), 3), h1().total());
  EXPECT_EQ(cumulative(h1(), 0), 0u);
  EXPECT_THROW(cumulative(h1(), 4), DomainError);
}

TEST(HistogramQueries, RangeSize) {
  EXPECT_EQ(range_size(h1(), {1, 3}), 12u);
  EXPECT_EQ(range_size(h2(), {2, 3}), 10u);
  EXPECT_EQ(range_size(h1(), {2, 2}), 4u);
  EXPECT_THROW(range_size(h1(), {2, 1}), DomainError);
  EXPECT_THROW(range_size(h1(), {0, 1}), DomainError);
  EXPECT_THROW(range_size(h1(), {1, 4}), DomainError);
}

TEST(HistogramInvariants, ConstructorRejectsMalformedInput) {
  EXPECT_THROW(Histogram({1}, {0}), DomainError);
  EXPECT_THROW(Histogram({1, 2}, {1}), DomainError);
  EXPECT_THROW(Histogram({3, 2}, {1, 0}), DomainError);
  EXPECT_THROW(Histogram({1, 2}, {1, 1}), DomainError);
}

TEST(HistogramInvariants, RandomizedProperties) {
  std::mt19937_64 rng(20240611);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(1, 3000)(rng);
    const std::size_t t = std::uniform_int_distribution<std::size_t>(1, n)(rng);
    // Narrow ranges on some trials force heavy duplicates.
    const Value hi = trial % 3 == 0 ? 20 : 1'000'000;
    std::vector<Value> values = testing::uniform_values(rng, n, -hi, hi);

    const Histogram h = build_exact(values, t);
    ASSERT_EQ(h, rank_walk_oracle(values, t));
    ASSERT_EQ(h.bucket_count(), t);
    ASSERT_EQ(h.total(), n);
    ASSERT_EQ(h.min_value(), *std::min_element(values.begin(), values.end()));
    ASSERT_EQ(h.max_value(), *std::max_element(values.begin(), values.end()));
    ASSERT_EQ(range_size(h, {1, t}), n);
    for (std::size_t i = 1; i <= t; ++i) {
      ASSERT_EQ(cumulative(h, i) - cumulative(h, i - 1), size(h, i));
    }
    if (n % t == 0) {
      for (std::size_t i = 1; i <= t; ++i) ASSERT_EQ(size(h, i), n / t);
    }

    std::shuffle(values.begin(), values.end(), rng);
    ASSERT_EQ(build_exact(values, t), h);
  }
}

}  // namespace
}  // namespace histomerge
