#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "histomerge/histogram.hpp"

namespace histomerge {

/// Sorted union of all summary boundaries with approximate cumulative
/// sizes, built by assuming every bucket's values sit on its start boundary.
///
/// With k summaries of T buckets there are k(T+1) boundaries and
/// k(T+1)-1 buckets; approx_cumulative[i-1] is A(i) for bucket i.
struct PreHistogram {
  std::vector<Value> boundaries;
  std::vector<Count> approx_cumulative;
  Count total = 0;

  std::size_t bucket_count() const noexcept { return approx_cumulative.size(); }

  /// A(i); A(0) is 0.
  Count cumulative(std::size_t i) const;

  /// a(i) = A(i) - A(i-1), 1-based.
  Count approx_size(std::size_t i) const;
};

/// One output bucket's run of pre-histogram buckets: `first` is a 1-based
/// pre-histogram bucket index, `count` may be 0 for an empty group.
struct GroupSpan {
  std::size_t first;
  std::size_t count;

  friend bool operator==(const GroupSpan&, const GroupSpan&) = default;
};

struct MergePlan {
  std::vector<GroupSpan> groups;
  bool has_empty_groups = false;
};

/// Guaranteed ceiling on |bucket size - N/beta| for a merged histogram,
/// kept as the exact rational 2N/T.
struct ErrorBound {
  Count numerator = 0;    // 2N
  Count denominator = 1;  // T

  double epsilon_max() const noexcept;

  /// epsilon_max as a fraction of the ideal bucket size N/beta, i.e. 2beta/T.
  double fraction_of_ideal(std::size_t beta) const noexcept;

  /// True when |observed - m*n/beta| < 2N/T, decided in exact integer arithmetic.
  bool admits(Count observed, Count n, std::size_t beta, std::size_t m = 1) const noexcept;

  friend bool operator==(const ErrorBound&, const ErrorBound&) = default;
};

struct MergeResult {
  Histogram histogram;
  MergePlan plan;
};

struct MergedSummary {
  Histogram histogram;
  MergePlan plan;
  ErrorBound bound;
};

/// Builds H0 from the input histograms via a k-way merge of their boundary
/// lists. Equal boundary values are ordered by (summary index, bucket index).
PreHistogram assemble_pre_histogram(std::span<const Histogram> summaries);

/// Reduces H0 to `beta` buckets. Output bucket i ends at the last
/// pre-histogram bucket whose A value is <= i*N/beta (compared as
/// A*beta <= i*N); the final bucket takes everything that is left.
MergeResult merge_to_beta(const PreHistogram& pre, std::size_t beta);

/// assemble_pre_histogram followed by merge_to_beta, plus the 2N/T bound.
/// All summaries must share one bucket count T and beta must be in [1, T].
MergedSummary merge_summaries(std::span<const Histogram> summaries, std::size_t beta);

ErrorBound theoretical_bound(Count n, std::size_t t);

/// Smallest T with 2*beta/T <= max_fraction.
std::size_t min_t_for_error(std::size_t beta, double max_fraction);

}  // namespace histomerge
