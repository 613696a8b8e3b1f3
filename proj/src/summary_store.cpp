#include "histomerge/summary_store.hpp"

#include <algorithm>
#include <fstream>
#include <optional>
#include <json.hpp>
#include <sstream>

#include "histomerge/error.hpp"

namespace histomerge {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

namespace {

void check_name_part(const std::string& part, const char* what) {
  if (part.empty()) {
    throw DomainError(std::string("summary ") + what + " is empty");
  }
  if (part.find_first_of("/\\") != std::string::npos || part.find('\0') != std::string::npos) {
    throw DomainError(std::string("summary ") + what + " contains a path separator: " + part);
  }
}

void check_consistent(const PartitionSummary& summary) {
  check_name_part(summary.label, "label");
  check_name_part(summary.partition_id, "partition_id");
  if (summary.partition_id.find("__") != std::string::npos) {
    throw DomainError("summary partition_id must not contain \"__\": " + summary.partition_id);
  }
  if (summary.n != summary.histogram.total()) {
    throw InvariantError("summary n (" + std::to_string(summary.n) + ") != histogram total (" +
                         std::to_string(summary.histogram.total()) + ")");
  }
  if (summary.t != summary.histogram.bucket_count()) {
    throw InvariantError("summary t (" + std::to_string(summary.t) + ") != bucket count (" +
                         std::to_string(summary.histogram.bucket_count()) + ")");
  }
}

template <class T>
T field(const Json& doc, const char* key) {
  const auto it = doc.find(key);
  if (it == doc.end()) {
    throw ParseError(std::string("summary is missing \"") + key + "\"");
  }
  try {
    return it->get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("summary field \"") + key + "\" has the wrong type: " + e.what());
  }
}

}  // namespace

PartitionSummary make_summary(std::string partition_id, std::string label, Histogram histogram) {
  const Count n = histogram.total();
  const std::size_t t = histogram.bucket_count();
  return PartitionSummary{std::move(partition_id), std::move(label), n, t, std::move(histogram),
                          kSummaryFormatVersion};
}

std::string summary_file_name(const PartitionSummary& summary) {
  return summary.label + "__" + summary.partition_id + kSummaryExtension;
}

std::string serialize_summary(const PartitionSummary& summary) {
  Json doc;
  doc["format_version"] = summary.format_version;
  doc["partition_id"] = summary.partition_id;
  doc["label"] = summary.label;
  doc["n"] = summary.n;
  doc["t"] = summary.t;
  doc["boundaries"] = std::vector<Value>(summary.histogram.boundaries().begin(),
                                         summary.histogram.boundaries().end());
  doc["sizes"] = std::vector<Count>(summary.histogram.sizes().begin(), summary.histogram.sizes().end());
  return doc.dump() + "\n";
}

PartitionSummary parse_summary(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("summary is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) {
    throw ParseError("summary is not a JSON object");
  }

  const auto version = field<long long>(doc, "format_version");
  if (version != kSummaryFormatVersion) {
    throw UnsupportedVersionError("unsupported summary format_version " + std::to_string(version));
  }

  auto partition_id = field<std::string>(doc, "partition_id");
  auto label = field<std::string>(doc, "label");
  const auto n = field<Count>(doc, "n");
  const auto t = field<std::size_t>(doc, "t");
  auto boundaries = field<std::vector<Value>>(doc, "boundaries");
  auto sizes = field<std::vector<Count>>(doc, "sizes");

  std::optional<Histogram> histogram;
  try {
    histogram.emplace(std::move(boundaries), std::move(sizes));
  } catch (const DomainError& e) {
    throw InvariantError(std::string("summary histogram is invalid: ") + e.what());
  }

  PartitionSummary summary{std::move(partition_id), std::move(label), n, t, std::move(*histogram),
                           static_cast<int>(version)};
  try {
    check_consistent(summary);
  } catch (const DomainError& e) {
    throw InvariantError(e.what());
  }
  return summary;
}

fs::path write_summary(const PartitionSummary& summary, const fs::path& dir, bool overwrite) {
  check_consistent(summary);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    throw IoError("cannot create " + dir.string() + ": " + ec.message());
  }
  const fs::path target = dir / summary_file_name(summary);
  write_summary_file(summary, target, overwrite);
  return target;
}

void write_summary_file(const PartitionSummary& summary, const fs::path& target, bool overwrite) {
  check_consistent(summary);
  if (!overwrite && fs::exists(target)) {
    throw DomainError("summary already exists: " + target.string());
  }

  fs::path temp = target;
  temp += ".tmp";
  {
    std::ofstream out(temp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw IoError("cannot write " + temp.string());
    }
    out << serialize_summary(summary);
    out.flush();
    if (!out) {
      throw IoError("failed writing " + temp.string());
    }
  }
  std::error_code ec;
  fs::rename(temp, target, ec);
  if (ec) {
    fs::remove(temp);
    throw IoError("cannot rename " + temp.string() + " to " + target.string() + ": " + ec.message());
  }
}

PartitionSummary read_summary(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot read " + path.string());
  }
  std::ostringstream text;
  text << in.rdbuf();
  if (in.bad()) {
    throw IoError("error while reading " + path.string());
  }
  return parse_summary(text.str());
}

Catalog Catalog::open(const fs::path& dir) {
  std::error_code ec;
  fs::directory_iterator it(dir, ec);
  if (ec) {
    throw IoError("cannot list " + dir.string() + ": " + ec.message());
  }

  Catalog catalog;
  catalog.dir_ = dir;
  const std::string extension = kSummaryExtension;
  for (const auto& item : it) {
    if (!item.is_regular_file()) continue;
    const std::string name = item.path().filename().string();
    if (name.size() <= extension.size() ||
        name.compare(name.size() - extension.size(), extension.size(), extension) != 0) {
      continue;
    }
    const std::string stem = name.substr(0, name.size() - extension.size());
    const auto split = stem.rfind("__");
    if (split == std::string::npos || split == 0 || split + 2 == stem.size()) continue;

    Entry entry{stem.substr(0, split), stem.substr(split + 2), item.path()};
    if (entry.partition_id == kMergedPartitionId) continue;
    catalog.entries_.push_back(std::move(entry));
  }

  std::sort(catalog.entries_.begin(), catalog.entries_.end(),
            [](const Entry& a, const Entry& b) { return a.label < b.label; });
  const auto dup = std::adjacent_find(catalog.entries_.begin(), catalog.entries_.end(),
                                      [](const Entry& a, const Entry& b) { return a.label == b.label; });
  if (dup != catalog.entries_.end()) {
    throw DomainError("catalog " + dir.string() + " has two summaries labeled " + dup->label);
  }
  return catalog;
}

std::vector<PartitionSummary> select_interval(const Catalog& catalog, const std::string& from_label,
                                              const std::string& to_label) {
  if (to_label < from_label) {
    throw DomainError("select_interval: from label " + from_label + " is after to label " + to_label);
  }
  std::vector<PartitionSummary> selected;
  for (const auto& entry : catalog.entries()) {
    if (entry.label < from_label || entry.label > to_label) continue;
    selected.push_back(read_summary(entry.path));
  }
  if (selected.empty()) {
    throw DomainError("no summaries labeled in [" + from_label + ", " + to_label + "] under " +
                      catalog.directory().string());
  }
  return selected;
}

}  // namespace histomerge
