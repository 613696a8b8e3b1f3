#include "histomerge/histogram.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "histomerge/error.hpp"

namespace histomerge {

namespace {

// floor(i * n / t) without overflowing for large partitions.
std::size_t rank_at(std::size_t i, std::size_t n, std::size_t t) {
  return static_cast<std::size_t>(static_cast<unsigned __int128>(i) * n / t);
}

void check_index(const Histogram& h, std::size_t i, const char* what) {
  if (i < 1 || i > h.bucket_count()) {
    throw DomainError(std::string(what) + ": bucket index " + std::to_string(i) +
                      " outside [1, " + std::to_string(h.bucket_count()) + "]");
  }
}

}  // namespace

Histogram::Histogram(std::vector<Value> boundaries, std::vector<Count> sizes)
    : boundaries_(std::move(boundaries)), sizes_(std::move(sizes)) {
  if (boundaries_.size() < 2) {
    throw DomainError("histogram needs at least two boundaries");
  }
  if (boundaries_.size() != sizes_.size()) {
    throw DomainError("histogram boundaries and sizes differ in length");
  }
  if (!std::is_sorted(boundaries_.begin(), boundaries_.end())) {
    throw DomainError("histogram boundaries must be non-decreasing");
  }
  if (sizes_.back() != 0) {
    throw DomainError("histogram closing size must be 0");
  }
  total_ = std::accumulate(sizes_.begin(), sizes_.end(), Count{0});
}

Histogram build_exact(std::span<const Value> values, std::size_t t) {
  std::vector<Value> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  return build_exact_sorted(sorted, t);
}

Histogram build_exact_sorted(std::span<const Value> sorted, std::size_t t) {
  const std::size_t n = sorted.size();
  if (n == 0) {
    throw DomainError("build_exact: no values");
  }
  if (t < 1 || t > n) {
    throw DomainError("build_exact: bucket count " + std::to_string(t) + " outside [1, " +
                      std::to_string(n) + "]");
  }

  std::vector<Value> boundaries(t + 1);
  std::vector<Count> sizes(t + 1, 0);
  for (std::size_t i = 0; i < t; ++i) {
    const std::size_t begin = rank_at(i, n, t);
    const std::size_t end = rank_at(i + 1, n, t);
    boundaries[i] = sorted[begin];
    sizes[i] = end - begin;
  }
  boundaries[t] = sorted.back();
  return Histogram(std::move(boundaries), std::move(sizes));
}

Count size(const Histogram& h, std::size_t i) {
  check_index(h, i, "size");
  return h.sizes()[i - 1];
}

Count cumulative(const Histogram& h, std::size_t i) {
  if (i == 0) return 0;
  check_index(h, i, "cumulative");
  const auto sizes = h.sizes();
  return std::accumulate(sizes.begin(), sizes.begin() + static_cast<std::ptrdiff_t>(i), Count{0});
}

Count range_size(const Histogram& h, BucketRange r) {
  if (r.first < 1 || r.first > r.last || r.last > h.bucket_count()) {
    throw DomainError("range_size: invalid bucket range [" + std::to_string(r.first) + ", " +
                      std::to_string(r.last) + "]");
  }
  return cumulative(h, r.last) - cumulative(h, r.first - 1);
}

}  // namespace histomerge
