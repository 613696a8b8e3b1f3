#include "histomerge/metrics.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include "histomerge/error.hpp"
#include "histomerge/kernels.hpp"

namespace histomerge {

namespace {

using Signed = __int128;

// a(i) * B - N, the deviation scaled by B so it stays integral.
Signed scaled_deviation(Count size, std::size_t buckets, Count total) {
  return static_cast<Signed>(size) * static_cast<Signed>(buckets) - static_cast<Signed>(total);
}

}  // namespace

Histogram exact_union_histogram(std::span<const std::vector<Value>> partitions, std::size_t beta,
                                int workers) {
  const std::vector<Value> sorted = kernels::sorted_union(partitions, workers);
  if (sorted.empty()) {
    throw DomainError("exact_union_histogram: union of partitions is empty");
  }
  return build_exact_sorted(sorted, beta);
}

double boundary_error(const Histogram& approx, const Histogram& exact) {
  const std::size_t buckets = exact.bucket_count();
  if (approx.bucket_count() != buckets) {
    throw DomainError("boundary_error: bucket counts differ (" +
                      std::to_string(approx.bucket_count()) + " vs " + std::to_string(buckets) + ")");
  }
  if (exact.max_value() == exact.min_value()) {
    throw DomainError("boundary_error: exact histogram spans a zero-width domain");
  }

  long double squares = 0;
  for (std::size_t i = 0; i <= buckets; ++i) {
    const long double d = static_cast<long double>(approx.boundaries()[i]) -
                          static_cast<long double>(exact.boundaries()[i]);
    squares += d * d;
  }
  const long double width = static_cast<long double>(exact.max_value()) -
                            static_cast<long double>(exact.min_value());
  const long double rms = std::sqrt(squares / static_cast<long double>(buckets + 1));
  return static_cast<double>(static_cast<long double>(buckets) / width * rms);
}

double size_error(const Histogram& approx, Count exact_total) {
  if (exact_total == 0) {
    throw DomainError("size_error: exact total must be positive");
  }
  const std::size_t buckets = approx.bucket_count();
  // (B/N) * sqrt(sum((a*B - N)/B)^2 / B) simplifies to sqrt(sum (a*B - N)^2 / B) / N.
  long double squares = 0;
  for (std::size_t i = 0; i < buckets; ++i) {
    const auto d = static_cast<long double>(scaled_deviation(approx.sizes()[i], buckets, exact_total));
    squares += d * d;
  }
  return static_cast<double>(std::sqrt(squares / static_cast<long double>(buckets)) /
                             static_cast<long double>(exact_total));
}

ErrorReport evaluate(const Histogram& approx, std::span<const std::vector<Value>> partitions,
                     std::size_t t, int workers) {
  if (approx.bucket_count() > t) {
    throw DomainError("evaluate: approximate histogram has more buckets than t");
  }
  return evaluate_against(approx, exact_union_histogram(partitions, approx.bucket_count(), workers), t);
}

ErrorReport evaluate_against(const Histogram& approx, const Histogram& exact, std::size_t t) {
  const std::size_t beta = approx.bucket_count();
  if (beta > t) {
    throw DomainError("evaluate: approximate histogram has more buckets than t");
  }
  const Count n = exact.total();

  ErrorReport report;
  report.mu_b = boundary_error(approx, exact);
  report.mu_s = size_error(approx, n);
  report.bound = theoretical_bound(n, t);
  report.bound_satisfied = true;
  report.per_bucket_size_dev.reserve(beta);
  for (std::size_t i = 0; i < beta; ++i) {
    const Count a = approx.sizes()[i];
    const double dev = static_cast<double>(scaled_deviation(a, beta, n)) / static_cast<double>(beta);
    report.per_bucket_size_dev.push_back(dev);
    report.max_abs_size_dev = std::max(report.max_abs_size_dev, std::abs(dev));
    report.bound_satisfied = report.bound_satisfied && report.bound.admits(a, n, beta);
  }
  return report;
}

std::string format_number(double value) {
  char buffer[64];
  const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, result.ptr);
}

std::string to_key_value(const ErrorReport& report) {
  std::ostringstream out;
  out << "mu_b=" << format_number(report.mu_b) << '\n'
      << "mu_s=" << format_number(report.mu_s) << '\n'
      << "max_abs_size_dev=" << format_number(report.max_abs_size_dev) << '\n'
      << "epsilon_max=" << format_number(report.bound.epsilon_max()) << '\n'
      << "epsilon_max_rational=" << report.bound.numerator << '/' << report.bound.denominator << '\n'
      << "bound_satisfied=" << (report.bound_satisfied ? "true" : "false") << '\n';
  return out.str();
}

}  // namespace histomerge
