#include <htmkit/data_io.hpp>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include <htmkit/errors.hpp>
#include <htmkit/format.hpp>

namespace htmkit {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> read_lines(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
  }
  return lines;
}

double parse_cell(std::string_view cell, std::size_t row, std::size_t col) {
  const auto t = trim(cell);
  double v = 0.0;
  const auto* end = t.data() + t.size();
  auto [ptr, ec] = std::from_chars(t.data(), end, v);
  if (t.empty() || ec != std::errc() || ptr != end) {
    throw DataError("unparseable cell '" + std::string(cell) + "' at row " + std::to_string(row) +
                    " column " + std::to_string(col));
  }
  return v;
}

}  // namespace

Dataset load_csv(const std::filesystem::path& path, bool has_label_column, bool skip_header) {
  const auto lines = read_lines(path);
  Dataset ds;
  ds.name = path.stem().string();
  ds.kind = DatasetKind::numeric;
  std::vector<double> labels;
  std::size_t arity = 0;
  for (std::size_t r = 0; r < lines.size(); ++r) {
    if (skip_header && r == 0) continue;
    if (trim(lines[r]).empty()) continue;
    IntegerRow row;
    std::string_view rest = lines[r];
    std::size_t col = 1;
    while (true) {
      const auto comma = rest.find(',');
      row.push_back(parse_cell(rest.substr(0, comma), r + 1, col));
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
      ++col;
    }
    if (arity == 0) {
      arity = row.size();
      if (has_label_column && arity < 2) {
        throw DataError("row " + std::to_string(r + 1) + ": a labeled row needs at least 2 columns");
      }
    } else if (row.size() != arity) {
      throw DataError("ragged row " + std::to_string(r + 1) + ": " + std::to_string(row.size()) +
                      " columns, expected " + std::to_string(arity));
    }
    if (has_label_column) {
      labels.push_back(row.back());
      row.pop_back();
    }
    ds.records.rows.push_back(std::move(row));
  }
  if (ds.records.empty()) throw DataError("no data rows in " + path.string());
  if (has_label_column) ds.labels = std::move(labels);
  return ds;
}

Dataset text_dataset(std::string name, const std::vector<std::string>& lines) {
  std::vector<std::string_view> kept;
  for (const auto& l : lines) {
    if (!l.empty()) kept.push_back(l);
  }
  if (kept.empty()) throw DataError("text dataset " + name + " is empty");
  std::size_t width = 0;
  for (auto l : kept) width = std::max(width, l.size());
  Dataset ds;
  ds.name = std::move(name);
  ds.kind = DatasetKind::text;
  for (std::size_t r = 0; r < kept.size(); ++r) {
    try {
      ds.records.rows.push_back(encode_text_row(kept[r], width));
    } catch (const DataError& e) {
      throw DataError("line " + std::to_string(r + 1) + ": " + e.what());
    }
  }
  return ds;
}

Dataset load_text(const std::filesystem::path& path) {
  return text_dataset(path.stem().string(), read_lines(path));
}

Dataset generate_times_table(int limit) {
  if (limit < 2) throw ConfigError("times_limit", "must be >= 2");
  Dataset ds;
  ds.name = "times_trainv1";
  ds.kind = DatasetKind::numeric;
  for (int a = 2; a <= limit; ++a) {
    for (int b = 2; b <= limit; ++b) {
      ds.records.rows.push_back({static_cast<double>(a), static_cast<double>(b), static_cast<double>(a * b)});
    }
  }
  ds.records.rows.push_back({2.0, static_cast<double>(std::min(3, limit)), 0.0});
  return ds;
}

Dataset generate_periodic_binary(int period, int cycles, std::optional<int> anomaly_phase) {
  if (period < 2) throw ConfigError("period", "must be >= 2");
  if (cycles < 1) throw ConfigError("cycles", "must be >= 1");
  const int phase = anomaly_phase.value_or(period / 2);
  if (phase < 0 || phase >= period) throw ConfigError("anomaly_phase", "must be in [0, period)");
  Dataset ds;
  ds.name = "pressure_data";
  ds.kind = DatasetKind::numeric;
  std::vector<double> labels;
  for (int i = 0; i < period * cycles; ++i) {
    const int p = i % period;
    ds.records.rows.push_back({static_cast<double>(p + 1)});
    labels.push_back(p == phase ? 1.0 : 0.0);
  }
  ds.labels = std::move(labels);
  return ds;
}

std::vector<std::string> word_fixture_lines(std::string_view name) {
  if (name == "word3a") return {"Fishing", "Fish-feed", "Fish", "Fis"};
  if (name == "word3b") return {"Football", "Fans", "Foo"};
  if (name == "word3c") return {"Video-Player", "Video", "Vid"};
  throw DataError("unknown word fixture " + std::string(name));
}

std::optional<Dataset> builtin_dataset(std::string_view name, int times_limit, int period, int cycles) {
  if (name == "times_trainv1" || name == "times") return generate_times_table(times_limit);
  if (name == "word3a" || name == "word3b" || name == "word3c") {
    return text_dataset(std::string(name), word_fixture_lines(name));
  }
  if (name == "periodic" || name == "pressure_data") return generate_periodic_binary(period, cycles);
  return std::nullopt;
}

void write_dataset(const Dataset& ds, const std::filesystem::path& path) {
  std::ostringstream out;
  if (ds.kind == DatasetKind::text) {
    for (const auto& row : ds.records.rows) out << decode_row(row) << '\n';
  } else {
    for (std::size_t r = 0; r < ds.records.size(); ++r) {
      const auto& row = ds.records.rows[r];
      for (std::size_t k = 0; k < row.size(); ++k) {
        if (k > 0) out << ',';
        out << format_number(row[k]);
      }
      if (ds.labels) out << ',' << format_number((*ds.labels)[r]);
      out << '\n';
    }
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw DataError("cannot write " + path.string());
  f << out.str();
  if (!f) throw DataError("failed writing " + path.string());
}

}  // namespace htmkit
