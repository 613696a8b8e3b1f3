#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace histomerge {

using Value = std::int64_t;
using Count = std::uint64_t;

/// Equi-depth histogram stored as m+1 ascending boundaries and m+1 sizes.
///
/// Bucket i (1-based) covers [boundary(i), boundary(i+1)); the last bucket
/// also includes its end boundary. sizes().back() is always 0, so the pair
/// list reads {(b1,s1), ..., (bm,sm), (b_{m+1},0)}.
class Histogram {
 public:
  /// Validates the invariants and throws DomainError if any is broken:
  /// equal lengths >= 2, non-decreasing boundaries, trailing size 0.
  Histogram(std::vector<Value> boundaries, std::vector<Count> sizes);

  std::size_t bucket_count() const noexcept { return sizes_.size() - 1; }
  Count total() const noexcept { return total_; }

  std::span<const Value> boundaries() const noexcept { return boundaries_; }
  std::span<const Count> sizes() const noexcept { return sizes_; }

  Value min_value() const noexcept { return boundaries_.front(); }
  Value max_value() const noexcept { return boundaries_.back(); }

  friend bool operator==(const Histogram&, const Histogram&) = default;

 private:
  std::vector<Value> boundaries_;
  std::vector<Count> sizes_;
  Count total_ = 0;
};

/// Inclusive span of 1-based bucket indexes.
struct BucketRange {
  std::size_t first;
  std::size_t last;
};

/// Exact t-bucket equi-depth histogram of `values`.
///
/// After sorting, bucket i starts at rank floor((i-1)*N/t) and holds
/// floor(i*N/t) - floor((i-1)*N/t) values, so sizes differ by at most one
/// and every size is N/t when t divides N. The closing boundary is the
/// maximum. Throws DomainError on empty input or t outside [1, N].
Histogram build_exact(std::span<const Value> values, std::size_t t);

/// Same as build_exact but skips the sort; `sorted` must be ascending.
Histogram build_exact_sorted(std::span<const Value> sorted, std::size_t t);

/// s(i,H): size of 1-based bucket i.
Count size(const Histogram& h, std::size_t i);

/// S(i,H): sizes of buckets 1..i. cumulative(h, 0) is 0.
Count cumulative(const Histogram& h, std::size_t i);

/// Sum of sizes over buckets r.first..r.last. Serves both the exact and
/// the approximate range size since either reads stored sizes.
Count range_size(const Histogram& h, BucketRange r);

}  // namespace histomerge
