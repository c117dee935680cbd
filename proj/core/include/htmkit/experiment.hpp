#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include <htmkit/data_io.hpp>
#include <htmkit/encoders.hpp>
#include <htmkit/metrics.hpp>
#include <htmkit/spatial_pooler.hpp>
#include <htmkit/temporal_memory.hpp>

namespace htmkit {

enum class ScoreMode { integer, sdr };

/// Every parameter of one experiment. The first block holds the classic
/// HTM-MAT system parameters.
struct ExperimentConfig {
  std::string data_name = "times_trainv1";
  std::string data_path;  // empty: data_name is a builtin dataset
  std::string data_format = "csv";
  bool has_labels = false;
  bool csv_header = false;

  std::size_t iters = 50;
  std::size_t min_overlap = 2;
  double perms_th = 0.21;
  std::optional<std::size_t> desired_local_activity = 2;
  std::optional<double> sparsity_percent;
  std::size_t seq_size = 700;
  double per_adjust = 99.0;

  std::uint64_t seed = 1;
  EncoderMode encoder = EncoderMode::scalar;
  std::size_t buckets = 64;
  std::size_t active_width = 3;
  std::size_t columns = 128;
  double potential_fraction = 0.5;
  std::size_t cells_per_column = 4;
  std::size_t theta = 1;
  double p_plus = 0.1;
  double p_minus = 0.02;
  LearningRule learning_rule = LearningRule::multiplicative;
  std::optional<double> initial_permanence;  // defaults to perms_th + 0.01
  std::size_t max_segments_per_cell = 32;
  std::size_t tm_passes = 3;
  ScoreMode score_mode = ScoreMode::integer;
  std::size_t threads = 0;
  int times_limit = 12;
  int period = 12;
  int cycles = 10;

  /// Sets one key from its textual value. Throws ConfigError naming the key
  /// on an unknown key or a malformed value.
  void set(std::string_view key, std::string_view value);

  /// Throws ConfigError naming the first invalid field.
  void validate() const;

  double effective_initial_permanence() const;
  PoolerConfig pooler() const;
  TemporalParams temporal() const;

  /// Every effective parameter, keyed by its config-file name.
  std::map<std::string, std::string> echo() const;
  /// FNV-1a 64 of the canonical echo, as 16 hex digits.
  std::string hash() const;
};

/// Parses the flat `key = value` format (`#` comments, blank lines ignored)
/// onto `base`. Throws ConfigError on syntax errors or unknown keys.
ExperimentConfig parse_config(std::string_view text, ExperimentConfig base = {});
/// Throws DataError if the file cannot be read.
ExperimentConfig load_config(const std::filesystem::path& path, ExperimentConfig base = {});

/// Resolves the configured dataset (builtin or file). Throws DataError when
/// the file is missing or malformed.
Dataset resolve_dataset(const ExperimentConfig& cfg);

enum class BaselineKind { last_value, majority_class };

BaselineKind parse_baseline_kind(std::string_view name);

/// Naive label predictor for comparison tables. majority_class predicts the
/// most frequent label (ties to the smallest value) for every row;
/// last_value predicts label[t-1] for t >= 1.
///
/// Throws DataError when the dataset has no labels (or, for last_value,
/// fewer than two).
MetricReport run_baseline(const Dataset& ds, BaselineKind kind);

struct ExperimentResult {
  nlohmann::json report;
  std::string curve_csv;
  std::string predictions_csv;
  nlohmann::json segments;
};

/// encode -> evolve_sdr -> temporal training -> predict_all -> metrics.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

struct ArtifactPaths {
  std::optional<std::filesystem::path> report;
  std::optional<std::filesystem::path> curve;
  std::optional<std::filesystem::path> predictions;
  std::optional<std::filesystem::path> segments;
};

void write_artifacts(const ExperimentResult& result, const ArtifactPaths& paths);

/// Report JSON without its wall-clock field, serialized; equal strings mean
/// byte-identical reports modulo timing.
std::string report_fingerprint(const nlohmann::json& report);

struct ComparisonTable {
  std::string markdown;
  std::string csv;
};

/// RMSE per dataset from the given reports next to the published values,
/// which are labeled "paper-reported". Throws DataError on an empty list.
ComparisonTable emit_comparison(const std::vector<nlohmann::json>& reports);

}  // namespace htmkit
