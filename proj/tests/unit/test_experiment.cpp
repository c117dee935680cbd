#include <gtest/gtest.h>

#include <fstream>

#include <htmkit/errors.hpp>
#include <htmkit/experiment.hpp>
#include <htmkit/reference_values.hpp>

using namespace htmkit;

namespace {

Dataset labeled(std::vector<double> labels) {
  Dataset ds;
  ds.name = "l";
  for (std::size_t i = 0; i < labels.size(); ++i) ds.records.rows.push_back({static_cast<double>(i + 1)});
  ds.labels = std::move(labels);
  return ds;
}

ExperimentConfig quick(const std::string& name) {
  ExperimentConfig cfg;
  cfg.data_name = name;
  cfg.iters = 5;
  return cfg;
}

}  // namespace

TEST(Config, ParsesFlatKeyValueFormat) {
  const auto cfg = parse_config("# comment\niters = 7\nperms_th=0.3  # trailing\n\nencoder = identity\n");
  EXPECT_EQ(cfg.iters, 7u);
  EXPECT_DOUBLE_EQ(cfg.perms_th, 0.3);
  EXPECT_EQ(cfg.encoder, EncoderMode::identity);
  EXPECT_DOUBLE_EQ(cfg.effective_initial_permanence(), 0.31);
}

TEST(Config, UnknownKeyNamesTheField) {
  try {
    parse_config("bogus = 1\n");
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.field(), "bogus");
  }
}

TEST(Config, MalformedValueNamesTheField) {
  try {
    parse_config("iters = many\n");
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.field(), "iters");
  }
}

TEST(Config, InvalidRangesNameTheField) {
  auto cfg = ExperimentConfig{};
  cfg.per_adjust = 150;
  try {
    cfg.validate();
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.field(), "per_adjust");
  }
  cfg = ExperimentConfig{};
  cfg.sparsity_percent = 5;
  EXPECT_THROW(cfg.validate(), ConfigError);
  cfg.set("desired_localActivity", "none");
  EXPECT_NO_THROW(cfg.validate());
}

TEST(Config, EchoListsEveryEffectiveParameter) {
  const ExperimentConfig cfg;
  const auto echo = cfg.echo();
  for (const char* key : {"iters", "min_overlap", "perms_th", "desired_localActivity", "seq_size", "per_adjust",
                          "seed", "encoder", "learning_rule", "p_plus", "p_minus", "theta", "cells_per_column",
                          "initial_permanence"}) {
    EXPECT_TRUE(echo.count(key)) << key;
  }
  EXPECT_EQ(echo.at("iters"), "50");
  EXPECT_EQ(echo.at("perms_th"), "0.21");
  EXPECT_EQ(echo.at("per_adjust"), "99");
  // Each echoed value parses back to the same configuration.
  ExperimentConfig back;
  for (const auto& [k, v] : echo) back.set(k, v);
  EXPECT_EQ(back.hash(), cfg.hash());
}

TEST(Config, HashChangesWithParameters) {
  ExperimentConfig a, b;
  b.seed = 2;
  EXPECT_NE(a.hash(), b.hash());
  EXPECT_EQ(a.hash().size(), 16u);
}

TEST(Baseline, MajorityAndLastValue) {
  const auto constant = labeled({1, 1, 1, 1});
  const auto m = run_baseline(constant, BaselineKind::majority_class);
  EXPECT_EQ(m.accuracy, 100.0);
  EXPECT_EQ(m.rmse, 0.0);
  EXPECT_EQ(run_baseline(constant, BaselineKind::last_value).rmse, 0.0);
  EXPECT_EQ(run_baseline(labeled({0, 1, 0, 1, 0, 1}), BaselineKind::majority_class).accuracy, 50.0);
}

TEST(Baseline, MissingLabelsIsDataError) {
  Dataset ds;
  ds.records.rows.push_back({1});
  EXPECT_THROW(run_baseline(ds, BaselineKind::majority_class), DataError);
  EXPECT_THROW(parse_baseline_kind("mean"), ConfigError);
}

TEST(RunExperiment, TimesTablePredictsCompletion) {
  const auto r = run_experiment(quick("times_trainv1")).report;
  EXPECT_EQ(r["final_prediction"]["predicted"], "2 3 6");
}

TEST(RunExperiment, PeriodicStreamHasZeroLabelRmse) {
  const auto r = run_experiment(quick("pressure_data")).report;
  EXPECT_EQ(r["rmse_labels"].get<double>(), 0.0);
}

TEST(RunExperiment, SameSeedIsByteIdentical) {
  const auto a = run_experiment(quick("word3a"));
  const auto b = run_experiment(quick("word3a"));
  EXPECT_EQ(report_fingerprint(a.report), report_fingerprint(b.report));
  EXPECT_EQ(a.curve_csv, b.curve_csv);
  EXPECT_EQ(a.predictions_csv, b.predictions_csv);
}

TEST(RunExperiment, ReportCarriesContractFields) {
  const auto res = run_experiment(quick("word3b"));
  const auto& r = res.report;
  for (const char* key : {"config", "config_hash", "mc", "predictions", "targets", "wall_clock_ms", "seed",
                          "baselines", "rmse_labels", "rmse_codes"}) {
    EXPECT_TRUE(r.contains(key)) << key;
  }
  EXPECT_EQ(r["mc"]["mape_curve"].size(), 5u);
  EXPECT_EQ(res.curve_csv.substr(0, 15), "iteration,mape\n");
}

TEST(RunExperiment, MissingFileIsDataError) {
  auto cfg = quick("x");
  cfg.data_path = "/nonexistent/x.csv";
  EXPECT_THROW(run_experiment(cfg), DataError);
}

TEST(Comparison, OneReportOneRowWithReferenceColumns) {
  auto r = run_experiment(quick("pressure_data")).report;
  const auto t = emit_comparison({r});
  EXPECT_NE(t.markdown.find("paper-reported"), std::string::npos);
  EXPECT_NE(t.markdown.find("| pressure_data |"), std::string::npos);
  EXPECT_EQ(std::count(t.csv.begin(), t.csv.end(), '\n'), 2);

  r["dataset"]["name"] = "heart_data";
  const auto heart = emit_comparison({r}).csv;
  EXPECT_NE(heart.find("1.5275,0.6734,1.5816,0.2582"), std::string::npos);
  r["dataset"]["name"] = "australian_data";
  EXPECT_NE(emit_comparison({r}).csv.find(",0.0381"), std::string::npos);
  EXPECT_THROW(emit_comparison({}), DataError);
}

TEST(ReferenceValues, FixtureFileMatchesCompiledTable) {
  std::ifstream in(std::string(HTMKIT_SOURCE_DIR) + "/data/reference_values.json");
  ASSERT_TRUE(in);
  const auto doc = nlohmann::json::parse(in);
  for (const auto& row : kReferenceRmse) {
    const auto& v = doc["rmse"]["rows"][std::string(row.dataset)];
    EXPECT_EQ(v[0].get<double>(), row.os_elm_rbf);
    EXPECT_EQ(v[1].get<double>(), row.os_elm_sig);
    EXPECT_EQ(v[2].get<double>(), row.os_elm_sin);
    EXPECT_EQ(v[3].get<double>(), row.htm_mat);
  }
  for (const auto& row : kReferencePredictions) {
    const auto& v = doc["predictions"]["rows"][std::string(row.dataset)];
    EXPECT_EQ(v[0].get<std::string>(), row.recurrentjs);
    EXPECT_EQ(v[1].get<std::string>(), row.htm_mat);
  }
}
