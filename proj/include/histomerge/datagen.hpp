#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "histomerge/histogram.hpp"

namespace histomerge {

/// Gumbel(location, scale) draws, multiplied by `quantize` and rounded to
/// the nearest integer Value.
struct GumbelSpec {
  double location = 0.0;
  double scale = 1.0;
  std::size_t count = 1;
  std::uint64_t seed = 0;
  double quantize = 1000.0;
};

/// x = location - scale * ln(-ln(u)) for u in (0, 1).
double gumbel_inverse_cdf(double u, double location, double scale);

/// Maps 64 random bits to a double strictly inside (0, 1).
double unit_open_interval(std::uint64_t bits) noexcept;

std::vector<Value> generate_gumbel(const GumbelSpec& spec);

/// Same transform, but u is taken from `uniform` instead of the seeded stream.
std::vector<Value> generate_gumbel(const GumbelSpec& spec, const std::function<double()>& uniform);

struct IngestResult {
  std::vector<Value> values;
  std::size_t skipped = 0;  // malformed lines
};

/// Reads whitespace-separated records and extracts the 1-based
/// `value_column` as an integer. Malformed lines are skipped and counted;
/// blank lines are ignored. Throws IoError if the file cannot be read and
/// DomainError if no line yields a value.
IngestResult ingest_tsv(const std::filesystem::path& path, std::size_t value_column);

/// Writes pageview-shaped records "syn page_<i> 1 <value>", so the value is
/// column 4. Atomic: writes a sibling temp file then renames it into place.
void write_tsv(const std::filesystem::path& path, std::span<const Value> values);

/// Label `offset` days after an ISO-8601 date (YYYY-MM-DD).
std::string day_label(const std::string& start, std::size_t offset);

}  // namespace histomerge
