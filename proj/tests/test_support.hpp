#pragma once

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "histomerge/datagen.hpp"
#include "histomerge/histogram.hpp"

namespace histomerge::testing {

// The two value sets of the standard worked example and their 3-bucket histograms.
inline const std::vector<Value> kP1{2, 4, 5, 6, 7, 10, 13, 16, 18, 20, 21, 25};
inline const std::vector<Value> kP2{3, 9, 11, 12, 14, 15, 17, 19, 22, 23, 24, 26, 27, 29, 30};

inline Histogram h1() { return Histogram({2, 7, 18, 25}, {4, 4, 4, 0}); }
inline Histogram h2() { return Histogram({3, 15, 24, 30}, {5, 5, 5, 0}); }

class TempDir {
 public:
  TempDir() {
    static std::mt19937_64 rng{std::random_device{}()};
    path_ = std::filesystem::temp_directory_path() / ("histomerge-test-" + std::to_string(rng()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

inline std::vector<Value> uniform_values(std::mt19937_64& rng, std::size_t n, Value lo, Value hi) {
  std::uniform_int_distribution<Value> dist(lo, hi);
  std::vector<Value> out(n);
  for (auto& v : out) v = dist(rng);
  return out;
}

inline std::vector<Value> gumbel_values(std::mt19937_64& rng, std::size_t n) {
  GumbelSpec spec;
  spec.count = n;
  spec.seed = rng();
  spec.location = std::uniform_real_distribution<double>(-5.0, 5.0)(rng);
  spec.scale = std::uniform_real_distribution<double>(0.2, 4.0)(rng);
  return generate_gumbel(spec);
}

// Counts the data falling in each bucket of `h` (half-open, last bucket closed).
inline std::vector<std::uint64_t> true_bucket_counts(const Histogram& h, std::vector<Value> data) {
  std::sort(data.begin(), data.end());
  const auto b = h.boundaries();
  const std::size_t m = h.bucket_count();
  std::vector<std::uint64_t> counts(m, 0);
  for (std::size_t i = 0; i < m; ++i) {
    const auto lo = std::lower_bound(data.begin(), data.end(), b[i]);
    const auto hi = i + 1 == m ? std::upper_bound(data.begin(), data.end(), b[i + 1])
                               : std::lower_bound(data.begin(), data.end(), b[i + 1]);
    counts[i] = static_cast<std::uint64_t>(std::max<std::ptrdiff_t>(0, hi - lo));
  }
  return counts;
}

}  // namespace histomerge::testing
