#include "histomerge/datagen.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

#include "histomerge/error.hpp"

namespace histomerge {

namespace {

void validate(const GumbelSpec& spec) {
  if (!(spec.scale > 0.0) || !std::isfinite(spec.scale)) {
    throw DomainError("gumbel: scale must be positive");
  }
  if (spec.count < 1) {
    throw DomainError("gumbel: count must be at least 1");
  }
  if (!(spec.quantize > 0.0) || !std::isfinite(spec.quantize) || !std::isfinite(spec.location)) {
    throw DomainError("gumbel: location and quantize must be finite, quantize positive");
  }
}

Value quantize(double x, double factor) {
  const double scaled = std::round(x * factor);
  if (!(std::abs(scaled) < 9.2e18)) {
    throw DomainError("gumbel: draw does not fit a 64-bit value");
  }
  return static_cast<Value>(scaled);
}

bool split_field(std::string_view line, std::size_t column, std::string_view& field) {
  std::size_t index = 0;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t')) ++pos;
    if (pos == line.size()) break;
    std::size_t end = pos;
    while (end < line.size() && line[end] != ' ' && line[end] != '\t') ++end;
    if (++index == column) {
      field = line.substr(pos, end - pos);
      return true;
    }
    pos = end;
  }
  return false;
}

}  // namespace

double gumbel_inverse_cdf(double u, double location, double scale) {
  return location - scale * std::log(-std::log(u));
}

double unit_open_interval(std::uint64_t bits) noexcept {
  return (static_cast<double>(bits >> 12) + 0.5) * 0x1.0p-52;
}

std::vector<Value> generate_gumbel(const GumbelSpec& spec) {
  std::mt19937_64 rng(spec.seed);
  return generate_gumbel(spec, [&rng] { return unit_open_interval(rng()); });
}

std::vector<Value> generate_gumbel(const GumbelSpec& spec, const std::function<double()>& uniform) {
  validate(spec);
  std::vector<Value> out;
  out.reserve(spec.count);
  for (std::size_t i = 0; i < spec.count; ++i) {
    const double u = uniform();
    if (!(u > 0.0 && u < 1.0)) {
      throw DomainError("gumbel: uniform draw outside (0, 1)");
    }
    out.push_back(quantize(gumbel_inverse_cdf(u, spec.location, spec.scale), spec.quantize));
  }
  return out;
}

IngestResult ingest_tsv(const std::filesystem::path& path, std::size_t value_column) {
  if (value_column < 1) {
    throw DomainError("ingest_tsv: value column is 1-based");
  }
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot read " + path.string());
  }

  IngestResult result;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;

    std::string_view field;
    Value value = 0;
    if (!split_field(line, value_column, field)) {
      ++result.skipped;
      continue;
    }
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc() || ptr != field.data() + field.size()) {
      ++result.skipped;
      continue;
    }
    result.values.push_back(value);
  }
  if (in.bad()) {
    throw IoError("error while reading " + path.string());
  }
  if (result.values.empty()) {
    throw DomainError("no usable values in " + path.string() + " (" +
                      std::to_string(result.skipped) + " malformed lines)");
  }
  return result;
}

void write_tsv(const std::filesystem::path& path, std::span<const Value> values) {
  std::filesystem::path temp = path;
  temp += ".tmp";
  {
    std::ofstream out(temp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw IoError("cannot write " + temp.string());
    }
    std::string buffer;
    for (std::size_t i = 0; i < values.size(); ++i) {
      buffer.clear();
      buffer += "syn page_";
      buffer += std::to_string(i);
      buffer += " 1 ";
      buffer += std::to_string(values[i]);
      buffer += '\n';
      out << buffer;
    }
    out.flush();
    if (!out) {
      throw IoError("failed writing " + temp.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(temp, path, ec);
  if (ec) {
    throw IoError("cannot rename " + temp.string() + " to " + path.string() + ": " + ec.message());
  }
}

std::string day_label(const std::string& start, std::size_t offset) {
  using namespace std::chrono;
  int y = 0;
  unsigned m = 0;
  unsigned d = 0;
  char tail = 0;
  if (start.size() != 10 || std::sscanf(start.c_str(), "%4d-%2u-%2u%c", &y, &m, &d, &tail) != 3) {
    throw DomainError("not an ISO date (YYYY-MM-DD): " + start);
  }
  const year_month_day first{year{y}, month{m}, day{d}};
  if (!first.ok()) {
    throw DomainError("invalid calendar date: " + start);
  }
  const year_month_day shifted{sys_days{first} + days{static_cast<long>(offset)}};
  char buffer[16];
  std::snprintf(buffer, sizeof(buffer), "%04d-%02u-%02u", static_cast<int>(shifted.year()),
                static_cast<unsigned>(shifted.month()), static_cast<unsigned>(shifted.day()));
  return buffer;
}

}  // namespace histomerge
