#include <htmkit/experiment.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>

#include <htmkit/errors.hpp>
#include <htmkit/format.hpp>
#include <htmkit/predictor.hpp>
#include <htmkit/reference_values.hpp>

namespace htmkit {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

template <typename T>
T parse_number(std::string_view key, std::string_view value) {
  T out{};
  const auto v = trim(value);
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (v.empty() || ec != std::errc() || ptr != v.data() + v.size()) {
    throw ConfigError(std::string(key), "invalid value '" + std::string(value) + "'");
  }
  return out;
}

bool parse_bool(std::string_view key, std::string_view value) {
  const auto v = trim(value);
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ConfigError(std::string(key), "expected true/false, got '" + std::string(value) + "'");
}

bool is_unset(std::string_view v) { return v == "none" || v == "" || v == "unset"; }

std::string to_string(EncoderMode m) { return m == EncoderMode::scalar ? "scalar" : "identity"; }
std::string to_string(LearningRule r) { return r == LearningRule::multiplicative ? "multiplicative" : "additive"; }
std::string to_string(ScoreMode m) { return m == ScoreMode::integer ? "integer" : "sdr"; }

std::string render_row(const IntegerRow& row, DatasetKind kind) {
  if (kind == DatasetKind::text) return decode_row(row);
  std::string out;
  for (std::size_t k = 0; k < row.size(); ++k) {
    if (k > 0) out += ' ';
    out += format_number(row[k]);
  }
  return out;
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

void ExperimentConfig::set(std::string_view raw_key, std::string_view raw_value) {
  const auto key = std::string(trim(raw_key));
  const auto value = trim(raw_value);
  if (key == "data_name") {
    data_name = std::string(value);
  } else if (key == "data_path") {
    data_path = std::string(value);
  } else if (key == "data_format") {
    if (value != "csv" && value != "text") throw ConfigError(key, "expected csv or text");
    data_format = std::string(value);
  } else if (key == "has_labels") {
    has_labels = parse_bool(key, value);
  } else if (key == "csv_header") {
    csv_header = parse_bool(key, value);
  } else if (key == "iters") {
    iters = parse_number<std::size_t>(key, value);
  } else if (key == "min_overlap") {
    min_overlap = parse_number<std::size_t>(key, value);
  } else if (key == "perms_th") {
    perms_th = parse_number<double>(key, value);
  } else if (key == "desired_localActivity") {
    desired_local_activity =
        is_unset(value) ? std::nullopt : std::optional(parse_number<std::size_t>(key, value));
  } else if (key == "sparsity_percent") {
    sparsity_percent = is_unset(value) ? std::nullopt : std::optional(parse_number<double>(key, value));
  } else if (key == "seq_size") {
    seq_size = parse_number<std::size_t>(key, value);
  } else if (key == "per_adjust") {
    per_adjust = parse_number<double>(key, value);
  } else if (key == "seed") {
    seed = parse_number<std::uint64_t>(key, value);
  } else if (key == "encoder") {
    if (value == "scalar") {
      encoder = EncoderMode::scalar;
    } else if (value == "identity") {
      encoder = EncoderMode::identity;
    } else {
      throw ConfigError(key, "expected scalar or identity");
    }
  } else if (key == "buckets") {
    buckets = parse_number<std::size_t>(key, value);
  } else if (key == "active_width") {
    active_width = parse_number<std::size_t>(key, value);
  } else if (key == "columns") {
    columns = parse_number<std::size_t>(key, value);
  } else if (key == "potential_fraction") {
    potential_fraction = parse_number<double>(key, value);
  } else if (key == "cells_per_column") {
    cells_per_column = parse_number<std::size_t>(key, value);
  } else if (key == "theta") {
    theta = parse_number<std::size_t>(key, value);
  } else if (key == "p_plus") {
    p_plus = parse_number<double>(key, value);
  } else if (key == "p_minus") {
    p_minus = parse_number<double>(key, value);
  } else if (key == "learning_rule") {
    if (value == "multiplicative") {
      learning_rule = LearningRule::multiplicative;
    } else if (value == "additive") {
      learning_rule = LearningRule::additive;
    } else {
      throw ConfigError(key, "expected multiplicative or additive");
    }
  } else if (key == "initial_permanence") {
    initial_permanence =
        is_unset(value) ? std::nullopt : std::optional(parse_number<double>(key, value));
  } else if (key == "max_segments_per_cell") {
    max_segments_per_cell = parse_number<std::size_t>(key, value);
  } else if (key == "tm_passes") {
    tm_passes = parse_number<std::size_t>(key, value);
  } else if (key == "score_mode") {
    if (value == "integer") {
      score_mode = ScoreMode::integer;
    } else if (value == "sdr") {
      score_mode = ScoreMode::sdr;
    } else {
      throw ConfigError(key, "expected integer or sdr");
    }
  } else if (key == "threads") {
    threads = parse_number<std::size_t>(key, value);
  } else if (key == "times_limit") {
    times_limit = parse_number<int>(key, value);
  } else if (key == "period") {
    period = parse_number<int>(key, value);
  } else if (key == "cycles") {
    cycles = parse_number<int>(key, value);
  } else {
    throw ConfigError(key, "unknown configuration key");
  }
}

double ExperimentConfig::effective_initial_permanence() const {
  return initial_permanence.value_or(std::min(perms_th + 0.01, 1.0));
}

PoolerConfig ExperimentConfig::pooler() const {
  PoolerConfig p;
  p.columns = columns;
  p.min_overlap = min_overlap;
  p.connect_threshold = perms_th;
  p.desired_local_activity = desired_local_activity;
  p.sparsity_percent = sparsity_percent;
  p.potential_fraction = potential_fraction;
  p.iters = iters;
  p.seq_size = seq_size;
  p.threads = threads;
  return p;
}

TemporalParams ExperimentConfig::temporal() const {
  TemporalParams t;
  t.columns = columns;
  t.cells_per_column = cells_per_column;
  t.activation_threshold = theta;
  t.connect_threshold = perms_th;
  t.initial_permanence = effective_initial_permanence();
  t.max_segments_per_cell = max_segments_per_cell;
  t.learning = LearningParams{p_plus, p_minus, learning_rule};
  return t;
}

void ExperimentConfig::validate() const {
  if (data_path.empty() && data_name.empty()) throw ConfigError("data_name", "must be set");
  if (!(per_adjust >= 0.0 && per_adjust <= 100.0)) throw ConfigError("per_adjust", "must be in [0, 100]");
  if (buckets < 2) throw ConfigError("buckets", "must be >= 2");
  if (active_width == 0) throw ConfigError("active_width", "must be >= 1");
  if (tm_passes == 0) throw ConfigError("tm_passes", "must be >= 1");
  pooler().validate();
  temporal().validate();
}

std::map<std::string, std::string> ExperimentConfig::echo() const {
  auto opt = [](const auto& o) { return o ? format_number(static_cast<double>(*o)) : std::string("none"); };
  return {
      {"data_name", data_name},
      {"data_path", data_path},
      {"data_format", data_format},
      {"has_labels", has_labels ? "true" : "false"},
      {"csv_header", csv_header ? "true" : "false"},
      {"iters", std::to_string(iters)},
      {"min_overlap", std::to_string(min_overlap)},
      {"perms_th", format_number(perms_th)},
      {"desired_localActivity", opt(desired_local_activity)},
      {"sparsity_percent", opt(sparsity_percent)},
      {"seq_size", std::to_string(seq_size)},
      {"per_adjust", format_number(per_adjust)},
      {"seed", std::to_string(seed)},
      {"encoder", to_string(encoder)},
      {"buckets", std::to_string(buckets)},
      {"active_width", std::to_string(active_width)},
      {"columns", std::to_string(columns)},
      {"potential_fraction", format_number(potential_fraction)},
      {"cells_per_column", std::to_string(cells_per_column)},
      {"theta", std::to_string(theta)},
      {"p_plus", format_number(p_plus)},
      {"p_minus", format_number(p_minus)},
      {"learning_rule", to_string(learning_rule)},
      {"initial_permanence", format_number(effective_initial_permanence())},
      {"max_segments_per_cell", std::to_string(max_segments_per_cell)},
      {"tm_passes", std::to_string(tm_passes)},
      {"score_mode", to_string(score_mode)},
      {"threads", std::to_string(threads)},
      {"times_limit", std::to_string(times_limit)},
      {"period", std::to_string(period)},
      {"cycles", std::to_string(cycles)},
  };
}

std::string ExperimentConfig::hash() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](std::string_view s) {
    for (unsigned char c : s) {
      h ^= c;
      h *= 0x100000001b3ULL;
    }
  };
  for (const auto& [k, v] : echo()) {
    mix(k);
    mix("=");
    mix(v);
    mix("\n");
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

ExperimentConfig parse_config(std::string_view text, ExperimentConfig base) {
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    auto line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(line_no), "expected 'key = value'");
    }
    base.set(line.substr(0, eq), line.substr(eq + 1));
  }
  return base;
}

ExperimentConfig load_config(const std::filesystem::path& path, ExperimentConfig base) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open config " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), std::move(base));
}

Dataset resolve_dataset(const ExperimentConfig& cfg) {
  Dataset ds;
  if (!cfg.data_path.empty()) {
    if (!std::filesystem::exists(cfg.data_path)) throw DataError("dataset not found: " + cfg.data_path);
    ds = cfg.data_format == "text" ? load_text(cfg.data_path)
                                   : load_csv(cfg.data_path, cfg.has_labels, cfg.csv_header);
  } else {
    auto builtin = builtin_dataset(cfg.data_name, cfg.times_limit, cfg.period, cfg.cycles);
    if (!builtin) throw DataError("unknown dataset '" + cfg.data_name + "' and no data_path given");
    ds = std::move(*builtin);
  }
  if (!cfg.data_name.empty()) ds.name = cfg.data_name;
  return ds;
}

BaselineKind parse_baseline_kind(std::string_view name) {
  if (name == "last_value") return BaselineKind::last_value;
  if (name == "majority_class") return BaselineKind::majority_class;
  throw ConfigError("kind", "expected last_value or majority_class");
}

MetricReport run_baseline(const Dataset& ds, BaselineKind kind) {
  if (!ds.labels || ds.labels->empty()) throw DataError("baseline: dataset " + ds.name + " has no labels");
  const auto& labels = *ds.labels;
  if (kind == BaselineKind::majority_class) {
    std::map<double, std::size_t> counts;
    for (double l : labels) ++counts[l];
    double majority = counts.begin()->first;
    std::size_t best = 0;
    for (const auto& [label, n] : counts) {
      if (n > best) {
        best = n;
        majority = label;
      }
    }
    const std::vector<double> pred(labels.size(), majority);
    return evaluate(labels, pred);
  }
  if (labels.size() < 2) throw DataError("baseline: last_value needs at least two labels");
  const std::vector<double> truth(labels.begin() + 1, labels.end());
  const std::vector<double> pred(labels.begin(), labels.end() - 1);
  return evaluate(truth, pred);
}

namespace {

struct TargetView {
  std::vector<double> truth;
  std::vector<double> pred;
};

// Positions a query masks and the metrics compare.
std::vector<std::size_t> target_positions(const Dataset& ds, std::size_t arity) {
  if (ds.kind == DatasetKind::text) {
    std::vector<std::size_t> all(arity);
    for (std::size_t k = 0; k < arity; ++k) all[k] = k;
    return all;
  }
  return {arity - 1};
}

IntegerRow make_query(const IntegerRow& row, const Dataset& ds, std::span<const std::size_t> targets) {
  if (ds.kind == DatasetKind::text) return row;
  IntegerRow q = row;
  for (auto k : targets) q[k] = 0.0;
  return q;
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  const auto started = std::chrono::steady_clock::now();
  cfg.validate();
  const Dataset ds = resolve_dataset(cfg);

  // In-view rows: records with the label appended as the last field.
  MixedIntegerSequence rows = ds.records;
  if (ds.labels) {
    for (std::size_t r = 0; r < rows.size(); ++r) rows.rows[r].push_back((*ds.labels)[r]);
  }
  const std::size_t used = std::min(cfg.seq_size, rows.size());
  MixedIntegerSequence window;
  window.rows.assign(rows.rows.begin(), rows.rows.begin() + static_cast<std::ptrdiff_t>(used));

  const bool text = ds.kind == DatasetKind::text;
  const RowEncoder encoder = text ? RowEncoder::identity_fixed(window.rows.front().size(), 0, 127)
                                  : RowEncoder(window, cfg.encoder, cfg.buckets, cfg.active_width);

  const auto pooler_cfg = cfg.pooler();
  auto evolved = evolve_sdr(window, encoder, pooler_cfg, cfg.seed);

  // Temporal training over the pooled sequence, then one frozen pass.
  TemporalMemory tm(cfg.temporal(), derive_seed(cfg.seed, 0x7e3a0001ULL));
  for (std::size_t pass = 0; pass < cfg.tm_passes; ++pass) {
    for (const auto& p : evolved.pooled) tm.step(p.winners, true);
  }
  std::size_t winning = 0, bursting = 0, predicted_steps = 0;
  nlohmann::json sparsed_t = nlohmann::json::array();
  nlohmann::json min_val = nlohmann::json::array();
  for (const auto& p : evolved.pooled) {
    const auto step = tm.step(p.winners, false);
    winning += p.winners.size();
    bursting += step.bursting_columns.size();
    if (step.bursting_columns.empty()) ++predicted_steps;
    sparsed_t.push_back(tm.state().active.cells_sdr());
    min_val.push_back(p.min_winner_overlap());
  }

  RecognitionStore store;
  for (std::size_t r = 0; r < used; ++r) {
    store.ingest(RecognitionUnit{r, evolved.decoded.rows[r], evolved.pooled[r].winners});
  }

  const auto arity = window.rows.front().size();
  const auto targets = target_positions(ds, arity);
  MixedIntegerSequence queries;
  for (const auto& row : window.rows) queries.rows.push_back(make_query(row, ds, targets));

  std::vector<PredictionOutcome> outcomes;
  if (cfg.score_mode == ScoreMode::integer) {
    outcomes = predict_all(queries, store, cfg.per_adjust);
  } else {
    for (const auto& q : queries.rows) {
      const auto winners = pool(encoder.encode(q), evolved.trace.best_permanences, pooler_cfg).winners;
      outcomes.push_back(greedy_predict_sdr(winners, store, cfg.per_adjust));
    }
  }

  // Unlabeled data ends in the masked query exemplar, which has no truth.
  const std::size_t metric_rows = (!ds.labels && used >= 2) ? used - 1 : used;
  TargetView tv;
  for (std::size_t r = 0; r < metric_rows; ++r) {
    for (auto k : targets) {
      tv.truth.push_back(window.rows[r][k]);
      tv.pred.push_back(outcomes[r].predicted_row[k]);
    }
  }
  const auto target_metrics = evaluate(tv.truth, tv.pred);
  std::size_t exact_rows = 0;
  for (std::size_t r = 0; r < metric_rows; ++r) {
    bool same = true;
    for (auto k : targets) same = same && window.rows[r][k] == outcomes[r].predicted_row[k];
    exact_rows += same ? 1 : 0;
  }

  std::vector<double> flat_in, flat_out;
  for (std::size_t r = 0; r < used; ++r) {
    flat_in.insert(flat_in.end(), window.rows[r].begin(), window.rows[r].end());
    flat_out.insert(flat_out.end(), evolved.decoded.rows[r].begin(), evolved.decoded.rows[r].end());
  }
  const auto reconstruction = evaluate(flat_in, flat_out);

  // Prequential: each row predicted only from the units of earlier rows.
  nlohmann::json prequential = nullptr;
  if (metric_rows >= 2) {
    TargetView pq;
    RecognitionStore seen;
    for (std::size_t r = 0; r < metric_rows; ++r) {
      if (r > 0) {
        const auto o = greedy_predict(queries.rows[r], seen, cfg.per_adjust);
        for (auto k : targets) {
          pq.truth.push_back(window.rows[r][k]);
          pq.pred.push_back(o.predicted_row[k]);
        }
      }
      seen.ingest(RecognitionUnit{r, evolved.decoded.rows[r], evolved.pooled[r].winners});
    }
    prequential = evaluate(pq.truth, pq.pred);
  }

  nlohmann::json baselines = nullptr;
  if (ds.labels) {
    Dataset window_ds = ds;
    window_ds.labels->resize(used);
    baselines = nlohmann::json{{"majority_class", run_baseline(window_ds, BaselineKind::majority_class)}};
    if (used >= 2) baselines["last_value"] = run_baseline(window_ds, BaselineKind::last_value);
  }

  ExperimentResult result;
  std::ostringstream curve;
  curve << "iteration,mape\n";
  for (std::size_t i = 0; i < evolved.trace.mape.size(); ++i) {
    curve << i << ',' << format_number(evolved.trace.mape[i]) << '\n';
  }
  result.curve_csv = curve.str();

  std::ostringstream pred_csv;
  pred_csv << "row_index,predicted,score,accepted\n";
  nlohmann::json predictions = nlohmann::json::array();
  for (std::size_t r = 0; r < outcomes.size(); ++r) {
    const auto& o = outcomes[r];
    const auto rendered = render_row(o.predicted_row, ds.kind);
    pred_csv << r << ',' << csv_quote(rendered) << ',' << o.score << ',' << (o.accepted ? "true" : "false")
             << '\n';
    auto pj = nlohmann::json(o);
    pj["row_index"] = r;
    pj["query"] = render_row(queries.rows[r], ds.kind);
    pj["predicted"] = rendered;
    predictions.push_back(std::move(pj));
  }
  result.predictions_csv = pred_csv.str();
  result.segments = segments_to_json(tm.segments());

  const auto& final_outcome = outcomes.back();
  const auto running = evolved.trace.running_min();
  nlohmann::json report;
  report["format"] = "htmkit.report";
  report["version"] = 1;
  report["config"] = cfg.echo();
  report["config_hash"] = cfg.hash();
  report["seed"] = cfg.seed;
  report["dataset"] = {
      {"name", ds.name},
      {"kind", text ? "text" : "numeric"},
      {"rows_total", rows.size()},
      {"rows_used", used},
      {"metric_rows", metric_rows},
      {"labeled", ds.labels.has_value()},
      {"seq_size_truncated", used < rows.size()},
  };
  if (used == rows.size() && cfg.seq_size > rows.size()) {
    report["dataset"]["note"] = "seq_size exceeds the dataset; all rows used";
  }
  report["encoder"] = {{"mode", to_string(encoder.mode())},
                       {"width", encoder.width()},
                       {"clamped_values", encoder.clamped()}};
  report["mc"] = {{"iters", evolved.trace.mape.size()},
                  {"mape_curve", evolved.trace.mape},
                  {"running_min", running},
                  {"best_iteration", evolved.trace.best_iteration},
                  {"best_mape", evolved.trace.mape[evolved.trace.best_iteration]}};
  report["reconstruction"] = reconstruction;
  report["targets"] = target_metrics;
  report["targets"]["exact_rows"] = exact_rows;
  report["rmse_codes"] = reconstruction.rmse;
  report["rmse_labels"] = target_metrics.rmse;
  report["prequential"] = prequential;
  report["baselines"] = baselines;
  report["temporal"] = {
      {"passes", cfg.tm_passes},
      {"segments", tm.segments().segment_count()},
      {"burst_rate", winning == 0 ? 0.0 : static_cast<double>(bursting) / static_cast<double>(winning)},
      {"predicted_step_rate", static_cast<double>(predicted_steps) / static_cast<double>(used)},
      {"min_val", min_val},
      {"sparsed_data_T", sparsed_t},
  };
  report["predictions"] = predictions;
  report["final_prediction"] = {{"row_index", outcomes.size() - 1},
                                {"query", render_row(queries.rows.back(), ds.kind)},
                                {"predicted", render_row(final_outcome.predicted_row, ds.kind)},
                                {"score", final_outcome.score},
                                {"accepted", final_outcome.accepted}};
  report["wall_clock_ms"] = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();
  result.report = std::move(report);
  return result;
}

namespace {

void write_text(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  out << content;
  if (!out) throw DataError("failed writing " + path.string());
}

}  // namespace

void write_artifacts(const ExperimentResult& result, const ArtifactPaths& paths) {
  if (paths.report) write_text(*paths.report, result.report.dump(2) + "\n");
  if (paths.curve) write_text(*paths.curve, result.curve_csv);
  if (paths.predictions) write_text(*paths.predictions, result.predictions_csv);
  if (paths.segments) write_text(*paths.segments, result.segments.dump(2) + "\n");
}

std::string report_fingerprint(const nlohmann::json& report) {
  auto copy = report;
  copy.erase("wall_clock_ms");
  return copy.dump();
}

ComparisonTable emit_comparison(const std::vector<nlohmann::json>& reports) {
  if (reports.empty()) throw DataError("compare: no reports given");
  const char* header[] = {"dataset",
                          "rows",
                          "HTM rmse_labels (measured)",
                          "majority_class rmse (measured)",
                          "last_value rmse (measured)",
                          "OS-ELMrbf (paper-reported)",
                          "OS-ELMsig (paper-reported)",
                          "OS-ELMsin (paper-reported)",
                          "HTM-MAT (paper-reported)"};
  std::vector<std::vector<std::string>> rows;
  auto num = [](const nlohmann::json& j) { return j.is_number() ? format_number(j.get<double>()) : std::string("NA"); };
  for (const auto& r : reports) {
    const auto name = r.at("dataset").at("name").get<std::string>();
    std::vector<std::string> row{name, std::to_string(r.at("dataset").at("rows_used").get<std::size_t>()),
                                 num(r.at("rmse_labels"))};
    const auto& b = r.at("baselines");
    row.push_back(b.is_object() && b.contains("majority_class") ? num(b["majority_class"]["rmse"]) : "NA");
    row.push_back(b.is_object() && b.contains("last_value") ? num(b["last_value"]["rmse"]) : "NA");
    if (const auto ref = reference_rmse(name)) {
      char buf[4][16];
      std::snprintf(buf[0], sizeof(buf[0]), "%.4f", ref->os_elm_rbf);
      std::snprintf(buf[1], sizeof(buf[1]), "%.4f", ref->os_elm_sig);
      std::snprintf(buf[2], sizeof(buf[2]), "%.4f", ref->os_elm_sin);
      std::snprintf(buf[3], sizeof(buf[3]), "%.4f", ref->htm_mat);
      for (auto& s : buf) row.emplace_back(s);
    } else {
      for (int k = 0; k < 4; ++k) row.emplace_back("NA");
    }
    rows.push_back(std::move(row));
  }

  ComparisonTable t;
  std::ostringstream md, csv;
  md << '|';
  for (const auto* h : header) md << ' ' << h << " |";
  md << "\n|";
  for (std::size_t k = 0; k < std::size(header); ++k) md << (k == 0 ? " --- |" : " ---: |");
  md << '\n';
  for (std::size_t k = 0; k < std::size(header); ++k) csv << (k ? "," : "") << csv_quote(header[k]);
  csv << '\n';
  for (const auto& row : rows) {
    md << '|';
    for (const auto& cell : row) md << ' ' << cell << " |";
    md << '\n';
    for (std::size_t k = 0; k < row.size(); ++k) csv << (k ? "," : "") << csv_quote(row[k]);
    csv << '\n';
  }
  t.markdown = md.str();
  t.csv = csv.str();
  return t;
}

}  // namespace htmkit
