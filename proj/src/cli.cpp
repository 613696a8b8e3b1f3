#include "histomerge/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "histomerge/datagen.hpp"
#include "histomerge/error.hpp"
#include "histomerge/kernels.hpp"
#include "histomerge/merge.hpp"
#include "histomerge/metrics.hpp"
#include "histomerge/sampling.hpp"
#include "histomerge/summary_store.hpp"

namespace histomerge::cli {

namespace fs = std::filesystem;

namespace {

// Flag combination that parsed but makes no sense; reported as exit 2.
class UsageError : public Error {
 public:
  using Error::Error;
};

struct RunConfig {
  // generate
  std::size_t days = 0;
  std::size_t per_day = 0;
  std::string start = "2015-01-01";
  double location = 0.0;
  double scale = 1.0;
  double quantize = 1000.0;
  // shared
  std::uint64_t seed = 0;
  std::vector<std::string> inputs;
  std::string out;
  std::size_t t = 0;
  std::vector<std::size_t> t_values;
  std::size_t beta = 0;
  std::size_t value_column = 4;
  int workers = 0;
  bool overwrite = false;
  std::string partition_id = "part";
  // merge / evaluate
  std::string catalog = ".";
  std::string data;
  std::string from;
  std::string to;
  std::string merged;
  std::string method = "both";
  bool no_timing = false;
  // bound
  std::optional<double> max_error;
  std::optional<Count> n;
};

int default_workers() {
  const char* env = std::getenv("HISTOMERGE_WORKERS");
  if (env == nullptr || *env == '\0') return 0;
  char* end = nullptr;
  const long value = std::strtol(env, &end, 10);
  if (*end != '\0' || value < 1 || value > 4096) {
    throw UsageError(std::string("HISTOMERGE_WORKERS must be a positive integer, got \"") + env + "\"");
  }
  return static_cast<int>(value);
}

// Exact decimal for integral rationals, shortest round-trip double otherwise.
std::string format_ratio(Count numerator, Count denominator) {
  if (numerator % denominator == 0) return std::to_string(numerator / denominator);
  return format_number(static_cast<double>(numerator) / static_cast<double>(denominator));
}

std::string file_label(const fs::path& path) { return path.stem().string(); }

// Expands directories to their *.tsv files (sorted); plain files pass through.
std::vector<fs::path> expand_inputs(const std::vector<std::string>& inputs) {
  std::vector<fs::path> files;
  for (const auto& input : inputs) {
    const fs::path path(input);
    if (fs::is_directory(path)) {
      std::vector<fs::path> found;
      for (const auto& item : fs::directory_iterator(path)) {
        if (item.is_regular_file() && item.path().extension() == ".tsv") found.push_back(item.path());
      }
      std::sort(found.begin(), found.end());
      files.insert(files.end(), found.begin(), found.end());
    } else {
      files.push_back(path);
    }
  }
  return files;
}

std::uint64_t day_seed(std::uint64_t seed, std::size_t day) {
  // splitmix64 finalizer over (seed, day) so neighbouring days decorrelate.
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (day + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

int cmd_generate(const RunConfig& config, std::ostream& out, std::ostream& err) {
  std::error_code ec;
  fs::create_directories(config.out, ec);
  if (ec) throw IoError("cannot create " + config.out + ": " + ec.message());

  std::vector<std::string> labels(config.days);
  for (std::size_t d = 0; d < config.days; ++d) labels[d] = day_label(config.start, d);

  const auto failures = kernels::for_each_index(config.days, config.workers, [&](std::size_t d) {
    GumbelSpec spec;
    spec.location = config.location;
    spec.scale = config.scale;
    spec.quantize = config.quantize;
    spec.count = config.per_day;
    spec.seed = day_seed(config.seed, d);
    write_tsv(fs::path(config.out) / (labels[d] + ".tsv"), generate_gumbel(spec));
  });

  int status = kExitOk;
  for (std::size_t d = 0; d < config.days; ++d) {
    if (!failures[d]) continue;
    try {
      std::rethrow_exception(failures[d]);
    } catch (const std::exception& e) {
      err << "generate: day " << labels[d] << ": " << e.what() << '\n';
    }
    status = kExitFailure;
  }
  if (status == kExitOk) {
    out << "wrote " << config.days << " partitions of " << config.per_day << " values to "
        << config.out << '\n';
  }
  return status;
}

int cmd_summarize(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const std::vector<fs::path> files = expand_inputs(config.inputs);
  if (files.empty()) throw UsageError("summarize: no input files");

  struct Outcome {
    fs::path written;
    Count n = 0;
    std::size_t skipped = 0;
  };
  std::vector<Outcome> outcomes(files.size());
  const auto failures = kernels::for_each_index(files.size(), config.workers, [&](std::size_t i) {
    IngestResult ingested = ingest_tsv(files[i], config.value_column);
    const PartitionSummary summary =
        make_summary(config.partition_id, file_label(files[i]), build_exact(ingested.values, config.t));
    outcomes[i] = {write_summary(summary, config.out, config.overwrite), summary.n, ingested.skipped};
  });

  int status = kExitOk;
  for (std::size_t i = 0; i < files.size(); ++i) {
    if (failures[i]) {
      try {
        std::rethrow_exception(failures[i]);
      } catch (const std::exception& e) {
        err << "summarize: " << files[i].string() << ": " << e.what() << '\n';
      }
      status = kExitFailure;
      continue;
    }
    out << outcomes[i].written.string() << " n=" << outcomes[i].n << " skipped=" << outcomes[i].skipped
        << '\n';
  }
  return status;
}

int cmd_merge(const RunConfig& config, std::ostream& out, std::ostream&) {
  const Catalog catalog = Catalog::open(config.catalog);
  const std::vector<PartitionSummary> selected = select_interval(catalog, config.from, config.to);

  std::vector<Histogram> histograms;
  histograms.reserve(selected.size());
  for (const auto& summary : selected) histograms.push_back(summary.histogram);

  const MergedSummary merged = merge_summaries(histograms, config.beta);
  const PartitionSummary result =
      make_summary(kMergedPartitionId, config.from + ".." + config.to, merged.histogram);

  fs::path target_dir = ".";
  std::optional<fs::path> target_file;
  if (!config.out.empty()) {
    if (fs::is_directory(config.out)) {
      target_dir = config.out;
    } else {
      target_file = fs::path(config.out);
    }
  }

  fs::path written;
  if (target_file) {
    write_summary_file(result, *target_file, config.overwrite);
    written = *target_file;
  } else {
    written = write_summary(result, target_dir, config.overwrite);
  }

  const std::size_t t = selected.front().t;
  out << "merged_file=" << written.string() << '\n'
      << "summaries=" << selected.size() << '\n'
      << "n=" << result.n << '\n'
      << "t=" << t << '\n'
      << "beta=" << config.beta << '\n'
      << "epsilon_max=" << format_ratio(merged.bound.numerator, merged.bound.denominator) << '\n'
      << "epsilon_max_rational=" << merged.bound.numerator << '/' << merged.bound.denominator << '\n'
      << "fraction_of_ideal=" << format_ratio(2 * config.beta, t) << '\n';
  return kExitOk;
}

struct Partitions {
  std::vector<std::vector<Value>> values;
  std::vector<std::string> labels;
};

Partitions load_partitions(const RunConfig& config) {
  std::vector<fs::path> files = expand_inputs({config.data});
  Partitions loaded;
  for (const auto& file : files) {
    const std::string label = file_label(file);
    if (!config.from.empty() && label < config.from) continue;
    if (!config.to.empty() && label > config.to) continue;
    loaded.labels.push_back(label);
  }
  if (loaded.labels.empty()) throw DomainError("evaluate: no raw partitions selected under " + config.data);

  loaded.values.resize(loaded.labels.size());
  const auto failures = kernels::for_each_index(loaded.labels.size(), config.workers, [&](std::size_t i) {
    loaded.values[i] = ingest_tsv(fs::path(config.data) / (loaded.labels[i] + ".tsv"), config.value_column).values;
  });
  for (const auto& failure : failures) {
    if (failure) std::rethrow_exception(failure);
  }
  return loaded;
}

int cmd_evaluate(const RunConfig& config, std::ostream& out, std::ostream&) {
  using Clock = std::chrono::steady_clock;
  const Partitions partitions = load_partitions(config);
  const Histogram exact = exact_union_histogram(partitions.values, config.beta, config.workers);
  const std::size_t days = partitions.values.size();

  std::ofstream file;
  std::ostream* sink = &out;
  if (!config.out.empty()) {
    file.open(config.out, std::ios::binary | std::ios::trunc);
    if (!file) throw IoError("cannot write " + config.out);
    sink = &file;
  }
  *sink << kEvaluateCsvHeader << '\n';

  auto emit = [&](const std::string& method, std::size_t t, const Histogram& approx, double runtime_ms) {
    const ErrorReport report = evaluate_against(approx, exact, t);
    *sink << method << ',' << t << ',' << config.beta << ',' << days << ',' << format_number(report.mu_b)
          << ',' << format_number(report.mu_s) << ','
          << format_ratio(report.bound.numerator, report.bound.denominator) << ','
          << (report.bound_satisfied ? "true" : "false") << ','
          << format_number(config.no_timing ? 0.0 : runtime_ms) << '\n';
  };
  auto elapsed_ms = [](Clock::time_point since) {
    return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
  };

  if (!config.merged.empty()) {
    const PartitionSummary merged = read_summary(config.merged);
    if (merged.t != config.beta) {
      throw DomainError("evaluate: merged histogram has " + std::to_string(merged.t) +
                        " buckets but --beta is " + std::to_string(config.beta));
    }
    for (const std::size_t t : config.t_values) emit("merge", t, merged.histogram, 0.0);
    return kExitOk;
  }

  const bool run_merge = config.method == "merge" || config.method == "both";
  const bool run_tuple = config.method == "tuple" || config.method == "both";
  for (const std::size_t t : config.t_values) {
    if (run_merge) {
      // Summaries are the offline part; only the on-demand merge is timed.
      const std::vector<Histogram> summaries = kernels::build_exact_each(partitions.values, t, config.workers);
      const auto started = Clock::now();
      const MergedSummary merged = merge_summaries(summaries, config.beta);
      emit("merge", t, merged.histogram, elapsed_ms(started));
    }
    if (run_tuple) {
      const auto samples = sample_partitions(partitions.values, {t, config.seed}, config.workers);
      const auto started = Clock::now();
      const Histogram sampled =
          build_sampled_histogram(samples, config.beta, static_cast<Count>(exact.total()));
      emit("tuple", t, sampled, elapsed_ms(started));
    }
  }
  return kExitOk;
}

int cmd_bound(const RunConfig& config, std::ostream& out, std::ostream&) {
  if (config.max_error) {
    if (!(*config.max_error > 0.0) || *config.max_error > 1.0) {
      throw UsageError("bound: --max-error must be in (0, 1]");
    }
    out << min_t_for_error(config.beta, *config.max_error) << '\n';
    return kExitOk;
  }
  if (config.t == 0) throw UsageError("bound: give --t (with optional --n) or --max-error");
  if (config.beta > config.t) throw UsageError("bound: --beta must not exceed --t");

  if (config.n) {
    const ErrorBound bound = theoretical_bound(*config.n, config.t);
    out << format_ratio(bound.numerator, bound.denominator) << '\n';
  } else {
    out << format_ratio(2 * config.beta, config.t) << '\n';
  }
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Mergeable equi-depth histograms: summarize partitions, merge intervals, evaluate"};
  app.name("histomerge");
  app.require_subcommand(1);

  RunConfig config;
  int env_workers = 0;
  try {
    env_workers = default_workers();
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  config.workers = env_workers;

  auto add_workers = [&](CLI::App* sub) {
    sub->add_option("--workers", config.workers, "Parallel workers (default $HISTOMERGE_WORKERS)")
        ->check(CLI::Range(1, 4096));
  };

  auto* generate = app.add_subcommand("generate", "Write Gumbel-distributed TSV partitions, one per day");
  generate->add_option("--days", config.days, "Number of daily partitions")->required()->check(CLI::PositiveNumber);
  generate->add_option("--per-day", config.per_day, "Values per partition")->required()->check(CLI::PositiveNumber);
  generate->add_option("--seed", config.seed, "RNG seed");
  generate->add_option("--out", config.out, "Output directory")->required();
  generate->add_option("--start", config.start, "First day label (YYYY-MM-DD)");
  generate->add_option("--location", config.location, "Gumbel location");
  generate->add_option("--scale", config.scale, "Gumbel scale")->check(CLI::PositiveNumber);
  generate->add_option("--quantize", config.quantize, "Multiplier applied before rounding to integers")
      ->check(CLI::PositiveNumber);
  add_workers(generate);

  auto* summarize = app.add_subcommand("summarize", "Build exact T-bucket summaries of TSV partitions");
  summarize->add_option("inputs", config.inputs, "TSV files or directories of *.tsv")->required();
  summarize->add_option("--t", config.t, "Buckets per summary")->required()->check(CLI::PositiveNumber);
  summarize->add_option("--out", config.out, "Summary directory")->required();
  summarize->add_option("--value-column", config.value_column, "1-based value column")->check(CLI::PositiveNumber);
  summarize->add_option("--partition-id", config.partition_id, "Partition id stored in each summary");
  summarize->add_flag("--overwrite", config.overwrite, "Replace existing summaries");
  add_workers(summarize);

  auto* merge = app.add_subcommand("merge", "Merge the summaries of a label interval into beta buckets");
  merge->add_option("--catalog", config.catalog, "Summary directory");
  merge->add_option("--from", config.from, "First label (inclusive)")->required();
  merge->add_option("--to", config.to, "Last label (inclusive)")->required();
  merge->add_option("--beta", config.beta, "Buckets in the merged histogram")->required()->check(CLI::PositiveNumber);
  merge->add_option("--out", config.out, "Output file or directory (default: current directory)");
  merge->add_flag("--overwrite", config.overwrite, "Replace an existing output file");

  auto* evaluate = app.add_subcommand("evaluate", "Compare merged and sampled histograms with the exact one");
  evaluate->add_option("--data", config.data, "Directory of raw TSV partitions")->required();
  evaluate->add_option("--from", config.from, "First label (inclusive)");
  evaluate->add_option("--to", config.to, "Last label (inclusive)");
  evaluate->add_option("--beta", config.beta, "Buckets in the evaluated histograms")->required()->check(CLI::PositiveNumber);
  evaluate->add_option("--t", config.t_values, "Summary buckets / per-partition sample size (repeatable)")
      ->required()
      ->check(CLI::PositiveNumber);
  evaluate->add_option("--method", config.method, "merge, tuple or both")
      ->check(CLI::IsMember({"merge", "tuple", "both"}));
  evaluate->add_option("--merged", config.merged, "Evaluate this merged summary file instead");
  evaluate->add_option("--seed", config.seed, "Sampling seed");
  evaluate->add_option("--value-column", config.value_column, "1-based value column")->check(CLI::PositiveNumber);
  evaluate->add_option("--out", config.out, "CSV output path (default: stdout)");
  evaluate->add_flag("--no-timing", config.no_timing, "Report runtime_ms as 0");
  add_workers(evaluate);

  auto* bound = app.add_subcommand("bound", "Print the 2N/T error bound or the minimum T for an error target");
  bound->add_option("--beta", config.beta, "Merged bucket count")->required()->check(CLI::PositiveNumber);
  bound->add_option("--t", config.t, "Summary bucket count")->check(CLI::PositiveNumber);
  bound->add_option("--n", config.n, "Total number of values");
  bound->add_option("--max-error", config.max_error, "Largest error as a fraction of N/beta");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (generate->parsed()) return cmd_generate(config, out, err);
    if (summarize->parsed()) return cmd_summarize(config, out, err);
    if (merge->parsed()) {
      if (config.to < config.from) throw UsageError("merge: --from is after --to");
      return cmd_merge(config, out, err);
    }
    if (evaluate->parsed()) return cmd_evaluate(config, out, err);
    if (bound->parsed()) return cmd_bound(config, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace histomerge::cli
