#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include "histomerge/histogram.hpp"

namespace histomerge {

inline constexpr int kSummaryFormatVersion = 1;
inline constexpr const char* kSummaryExtension = ".edh.json";
// Partition id reserved for merged outputs; catalogs do not list them.
inline constexpr const char* kMergedPartitionId = "merged";

/// Exact T-bucket histogram of one labeled data partition.
struct PartitionSummary {
  std::string partition_id;
  std::string label;
  Count n = 0;
  std::size_t t = 0;
  Histogram histogram;
  int format_version = kSummaryFormatVersion;

  friend bool operator==(const PartitionSummary&, const PartitionSummary&) = default;
};

/// Wraps a histogram with consistent n and t.
PartitionSummary make_summary(std::string partition_id, std::string label, Histogram histogram);

/// `<label>__<partition_id>.edh.json`
std::string summary_file_name(const PartitionSummary& summary);

/// Canonical JSON text: one compact object, keys in the order
/// format_version, partition_id, label, n, t, boundaries, sizes; trailing newline.
std::string serialize_summary(const PartitionSummary& summary);

/// Inverse of serialize_summary. Throws ParseError, UnsupportedVersionError
/// or InvariantError depending on what is wrong with the text.
PartitionSummary parse_summary(const std::string& text);

/// Atomically writes the summary into `dir` (temp file + rename) and
/// returns the final path. Refuses to replace an existing file unless
/// `overwrite` is set.
std::filesystem::path write_summary(const PartitionSummary& summary,
                                    const std::filesystem::path& dir, bool overwrite = false);

/// Same as write_summary but to an explicit file path.
void write_summary_file(const PartitionSummary& summary, const std::filesystem::path& target,
                        bool overwrite = false);

PartitionSummary read_summary(const std::filesystem::path& path);

/// Directory of summary files, listed in label order.
class Catalog {
 public:
  struct Entry {
    std::string label;
    std::string partition_id;
    std::filesystem::path path;
  };

  /// Scans `dir` for summary files. Throws IoError if the directory is
  /// unreadable and DomainError if two summaries share a label.
  static Catalog open(const std::filesystem::path& dir);

  const std::filesystem::path& directory() const noexcept { return dir_; }
  const std::vector<Entry>& entries() const noexcept { return entries_; }

 private:
  std::filesystem::path dir_;
  std::vector<Entry> entries_;
};

/// Loads every summary with from_label <= label <= to_label, in label order.
/// Throws DomainError when from_label > to_label or nothing matches.
std::vector<PartitionSummary> select_interval(const Catalog& catalog, const std::string& from_label,
                                              const std::string& to_label);

}  // namespace histomerge
