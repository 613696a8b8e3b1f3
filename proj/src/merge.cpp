#include "histomerge/merge.hpp"

#include <cmath>
#include <queue>
#include <string>
#include <tuple>

#include "histomerge/error.hpp"

namespace histomerge {

namespace {

using Wide = unsigned __int128;

struct Cursor {
  Value value;
  std::size_t summary;
  std::size_t position;

  // Min-heap ordering on (value, summary); position is monotone per summary.
  bool operator>(const Cursor& other) const {
    return std::tie(value, summary) > std::tie(other.value, other.summary);
  }
};

}  // namespace

Count PreHistogram::cumulative(std::size_t i) const {
  if (i == 0) return 0;
  if (i > approx_cumulative.size()) {
    throw DomainError("pre-histogram bucket index " + std::to_string(i) + " out of range");
  }
  return approx_cumulative[i - 1];
}

Count PreHistogram::approx_size(std::size_t i) const {
  if (i == 0) {
    throw DomainError("pre-histogram bucket index 0 out of range");
  }
  return cumulative(i) - cumulative(i - 1);
}

double ErrorBound::epsilon_max() const noexcept {
  return static_cast<double>(numerator) / static_cast<double>(denominator);
}

double ErrorBound::fraction_of_ideal(std::size_t beta) const noexcept {
  return 2.0 * static_cast<double>(beta) / static_cast<double>(denominator);
}

bool ErrorBound::admits(Count observed, Count n, std::size_t beta, std::size_t m) const noexcept {
  // |observed - m*n/beta| < num/den  <=>  |observed*beta - m*n| * den < num * beta
  const Wide scaled = Wide{observed} * beta;
  const Wide ideal = Wide{m} * n;
  const Wide diff = scaled > ideal ? scaled - ideal : ideal - scaled;
  return diff * denominator < Wide{numerator} * beta;
}

PreHistogram assemble_pre_histogram(std::span<const Histogram> summaries) {
  if (summaries.empty()) {
    throw DomainError("assemble_pre_histogram: no summaries");
  }

  std::size_t boundary_count = 0;
  std::priority_queue<Cursor, std::vector<Cursor>, std::greater<>> heap;
  for (std::size_t s = 0; s < summaries.size(); ++s) {
    boundary_count += summaries[s].boundaries().size();
    heap.push({summaries[s].boundaries()[0], s, 0});
  }

  PreHistogram pre;
  pre.boundaries.reserve(boundary_count);
  pre.approx_cumulative.reserve(boundary_count - 1);

  Count running = 0;
  while (!heap.empty()) {
    const Cursor top = heap.top();
    heap.pop();
    const Histogram& source = summaries[top.summary];
    pre.boundaries.push_back(top.value);
    // Closing boundaries carry size 0, so they leave A unchanged.
    running += source.sizes()[top.position];
    if (pre.boundaries.size() < boundary_count) {
      pre.approx_cumulative.push_back(running);
    }
    if (top.position + 1 < source.boundaries().size()) {
      heap.push({source.boundaries()[top.position + 1], top.summary, top.position + 1});
    }
  }
  pre.total = running;
  return pre;
}

MergeResult merge_to_beta(const PreHistogram& pre, std::size_t beta) {
  const std::size_t buckets = pre.bucket_count();
  if (buckets == 0 || pre.boundaries.size() != buckets + 1) {
    throw DomainError("merge_to_beta: malformed pre-histogram");
  }
  if (pre.total == 0 || pre.approx_cumulative.back() != pre.total) {
    throw DomainError("merge_to_beta: pre-histogram cumulative sizes do not reach its total");
  }
  if (beta < 1 || beta > buckets) {
    throw DomainError("merge_to_beta: beta " + std::to_string(beta) + " outside [1, " +
                      std::to_string(buckets) + "]");
  }

  const Count n = pre.total;
  MergePlan plan;
  plan.groups.reserve(beta);

  std::vector<Value> boundaries;
  std::vector<Count> sizes;
  boundaries.reserve(beta + 1);
  sizes.reserve(beta + 1);

  std::size_t last_cut = 0;  // last pre-histogram bucket already absorbed
  std::size_t next = 1;
  for (std::size_t current = 1; current <= beta; ++current) {
    if (current == beta) {
      next = buckets + 1;
    } else {
      while (next <= buckets && Wide{pre.approx_cumulative[next - 1]} * beta <= Wide{current} * n) {
        ++next;
      }
    }
    const std::size_t cut = next - 1;
    plan.groups.push_back({last_cut + 1, cut - last_cut});
    plan.has_empty_groups |= (cut == last_cut);
    boundaries.push_back(pre.boundaries[last_cut]);
    sizes.push_back(pre.cumulative(cut) - pre.cumulative(last_cut));
    last_cut = cut;
  }
  boundaries.push_back(pre.boundaries.back());
  sizes.push_back(0);

  return {Histogram(std::move(boundaries), std::move(sizes)), std::move(plan)};
}

MergedSummary merge_summaries(std::span<const Histogram> summaries, std::size_t beta) {
  if (summaries.empty()) {
    throw DomainError("merge_summaries: no summaries");
  }
  const std::size_t t = summaries.front().bucket_count();
  for (const Histogram& h : summaries) {
    if (h.bucket_count() != t) {
      throw DomainError("merge_summaries: summaries mix bucket counts " + std::to_string(t) +
                        " and " + std::to_string(h.bucket_count()));
    }
  }
  if (beta < 1 || beta > t) {
    throw DomainError("merge_summaries: beta " + std::to_string(beta) + " outside [1, " +
                      std::to_string(t) + "]");
  }

  const PreHistogram pre = assemble_pre_histogram(summaries);
  MergeResult merged = merge_to_beta(pre, beta);
  return {std::move(merged.histogram), std::move(merged.plan), theoretical_bound(pre.total, t)};
}

ErrorBound theoretical_bound(Count n, std::size_t t) {
  if (t == 0) {
    throw DomainError("theoretical_bound: bucket count must be positive");
  }
  return {2 * n, t};
}

std::size_t min_t_for_error(std::size_t beta, double max_fraction) {
  if (beta < 1) {
    throw DomainError("min_t_for_error: beta must be positive");
  }
  if (!(max_fraction > 0.0) || max_fraction > 1.0) {
    throw DomainError("min_t_for_error: max fraction must be in (0, 1]");
  }
  const double exact = 2.0 * static_cast<double>(beta) / max_fraction;
  // Decimal fractions like 0.02 are not representable; snap near-integers
  // so 2*254/0.02 gives 25400 rather than 25401.
  const double nearest = std::round(exact);
  if (std::abs(exact - nearest) <= 1e-9 * exact) {
    return static_cast<std::size_t>(nearest);
  }
  return static_cast<std::size_t>(std::ceil(exact));
}

}  // namespace histomerge
