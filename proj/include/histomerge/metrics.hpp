#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "histomerge/histogram.hpp"
#include "histomerge/merge.hpp"

namespace histomerge {

/// Accuracy of an approximate histogram against the exact union histogram.
struct ErrorReport {
  double mu_b = 0.0;
  double mu_s = 0.0;
  std::vector<double> per_bucket_size_dev;  // a(i) - N/B
  double max_abs_size_dev = 0.0;
  ErrorBound bound;
  bool bound_satisfied = false;  // every |a(i) - N/B| < 2N/T, checked exactly
};

/// The exact-union oracle H^e: build_exact over all partitions pooled.
Histogram exact_union_histogram(std::span<const std::vector<Value>> partitions, std::size_t beta,
                                int workers = 0);

/// Normalized RMS boundary displacement:
///   B / (v_max - v_min) * sqrt(1/(B+1) * sum_i (b(i,approx) - b(i,exact))^2)
/// with v_min, v_max the exact histogram's end boundaries.
double boundary_error(const Histogram& approx, const Histogram& exact);

/// Normalized RMS bucket-size deviation from the ideal depth N/B:
///   B / N * sqrt(1/B * sum_i (a(i) - N/B)^2)
double size_error(const Histogram& approx, Count exact_total);

/// Computes H^e with approx's bucket count and fills every report field.
/// `t` is the per-partition summary bucket count behind the 2N/T bound.
ErrorReport evaluate(const Histogram& approx, std::span<const std::vector<Value>> partitions,
                     std::size_t t, int workers = 0);

/// evaluate() with a precomputed exact histogram of matching bucket count.
ErrorReport evaluate_against(const Histogram& approx, const Histogram& exact, std::size_t t);

/// Flat "key=value" lines, one per scalar field.
std::string to_key_value(const ErrorReport& report);

/// Shortest text that round-trips the double.
std::string format_number(double value);

}  // namespace histomerge
