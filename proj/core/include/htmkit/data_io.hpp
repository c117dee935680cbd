#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <htmkit/encoders.hpp>

namespace htmkit {

enum class DatasetKind { numeric, text };

struct Dataset {
  std::string name;
  DatasetKind kind = DatasetKind::numeric;
  MixedIntegerSequence records;
  /// Present for labeled data (the last CSV column).
  std::optional<std::vector<double>> labels;
};

/// Comma-separated numeric rows, no header unless `skip_header`. Blank lines
/// are ignored; CRLF is accepted. With `has_label_column` the last column is
/// split off into labels.
///
/// Throws DataError on a missing file, an unparseable cell (with 1-based
/// row/column), ragged rows or an empty file.
Dataset load_csv(const std::filesystem::path& path, bool has_label_column, bool skip_header = false);

/// Newline-separated strings (LF or CRLF), encoded with encode_text_row and
/// padded to the longest line. Blank lines are ignored.
///
/// Throws DataError on a missing or empty file, or an unsupported character.
Dataset load_text(const std::filesystem::path& path);

/// Same as load_text over in-memory lines.
Dataset text_dataset(std::string name, const std::vector<std::string>& lines);

/// Times-table rows (a, b, a*b) for a, b in [2, limit] followed by the query
/// exemplar (2, min(3, limit), 0) whose product is masked with 0.
/// Throws ConfigError when limit < 2.
Dataset generate_times_table(int limit = 12);

/// Repeating 0/1 threat flags: record i holds the phase i mod period (1-based)
/// and its label is 1 exactly at `anomaly_phase`. Length period * cycles.
/// Throws ConfigError on period < 2, cycles < 1 or anomaly_phase >= period.
Dataset generate_periodic_binary(int period, int cycles, std::optional<int> anomaly_phase = {});

/// Lines of the bundled word fixtures word3a / word3b / word3c. The final
/// line is the masked query: the first word cut to three characters.
std::vector<std::string> word_fixture_lines(std::string_view name);

/// Builtin dataset by name (times_trainv1, word3a, word3b, word3c, periodic,
/// pressure_data), or nullopt when the name is not builtin.
std::optional<Dataset> builtin_dataset(std::string_view name, int times_limit = 12, int period = 12,
                                       int cycles = 10);

/// Writes numeric data as CSV (labels as the last column) or text data as
/// lines. Throws DataError when the file cannot be written.
void write_dataset(const Dataset& ds, const std::filesystem::path& path);

}  // namespace htmkit
