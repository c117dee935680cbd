#include <glob.h>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#if __has_include(<CLI11.hpp>)
#include <CLI11.hpp>
#else
#include <CLI/CLI.hpp>
#endif
#include <nlohmann/json.hpp>

#include <htmkit/data_io.hpp>
#include <htmkit/errors.hpp>
#include <htmkit/experiment.hpp>

namespace {

enum ExitCode { kOk = 0, kInternal = 1, kData = 2, kConfig = 3 };

std::vector<std::string> expand_glob(const std::string& pattern) {
  glob_t g{};
  std::vector<std::string> out;
  if (::glob(pattern.c_str(), 0, nullptr, &g) == 0) {
    for (std::size_t i = 0; i < g.gl_pathc; ++i) out.emplace_back(g.gl_pathv[i]);
  }
  ::globfree(&g);
  std::sort(out.begin(), out.end());
  return out;
}

nlohmann::json read_json(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw htmkit::DataError("cannot open " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw htmkit::DataError(path + ": " + e.what());
  }
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw htmkit::DataError("cannot write " + path);
  out << content;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"htmkit: spatial pooling, temporal memory and greedy prediction experiments"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "run one experiment from a config file");
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::vector<std::string> overrides;
  std::string curve_path, predictions_path, report_path, segments_path;
  run->add_option("--config", config_path, "flat key = value config file")->required();
  run->add_option("--seed", seed, "master seed (overrides the config)");
  run->add_option("--set", overrides, "key=value override, repeatable");
  run->add_option("--emit-curve", curve_path, "MC MAPE curve CSV");
  run->add_option("--emit-predictions", predictions_path, "per-row predictions CSV");
  run->add_option("--emit-report", report_path, "report JSON");
  run->add_option("--emit-segments", segments_path, "learned distal segments JSON");

  auto* baseline = app.add_subcommand("baseline", "naive label predictor metrics");
  std::string data_path, kind;
  bool header = false;
  baseline->add_option("--data", data_path, "CSV with the label in the last column")->required();
  baseline->add_option("--kind", kind, "last_value or majority_class")->required();
  baseline->add_flag("--header", header, "skip the first CSV line");

  auto* compare = app.add_subcommand("compare", "RMSE comparison table from reports");
  std::string reports_glob, csv_out;
  compare->add_option("--reports", reports_glob, "glob of report JSON files")->required();
  compare->add_option("--csv", csv_out, "also write the table as CSV");

  auto* gen = app.add_subcommand("gen", "write a builtin toy dataset");
  std::string toy, out_path;
  gen->add_option("--toy", toy, "times, word3a, word3b, word3c or periodic")
      ->required()
      ->check(CLI::IsMember({"times", "word3a", "word3b", "word3c", "periodic"}));
  gen->add_option("--out", out_path, "output path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kConfig;
  }

  try {
    if (run->parsed()) {
      auto cfg = htmkit::load_config(config_path);
      for (const auto& kv : overrides) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) throw htmkit::ConfigError(kv, "expected key=value");
        cfg.set(kv.substr(0, eq), kv.substr(eq + 1));
      }
      if (seed) cfg.seed = *seed;
      const auto result = htmkit::run_experiment(cfg);
      htmkit::ArtifactPaths paths;
      if (!report_path.empty()) paths.report = report_path;
      if (!curve_path.empty()) paths.curve = curve_path;
      if (!predictions_path.empty()) paths.predictions = predictions_path;
      if (!segments_path.empty()) paths.segments = segments_path;
      htmkit::write_artifacts(result, paths);
      const auto& r = result.report;
      std::cout << "dataset " << r["dataset"]["name"].get<std::string>() << ": final prediction \""
                << r["final_prediction"]["predicted"].get<std::string>() << "\", rmse_labels "
                << r["rmse_labels"].dump() << ", best MC MAPE " << r["mc"]["best_mape"].dump() << "\n";
    } else if (baseline->parsed()) {
      const auto k = htmkit::parse_baseline_kind(kind);
      const auto ds = htmkit::load_csv(data_path, true, header);
      std::cout << nlohmann::json(htmkit::run_baseline(ds, k)).dump(2) << "\n";
    } else if (compare->parsed()) {
      const auto files = expand_glob(reports_glob);
      if (files.empty()) throw htmkit::DataError("no reports match " + reports_glob);
      std::vector<nlohmann::json> reports;
      for (const auto& f : files) reports.push_back(read_json(f));
      const auto table = htmkit::emit_comparison(reports);
      std::cout << table.markdown;
      if (!csv_out.empty()) write_file(csv_out, table.csv);
    } else if (gen->parsed()) {
      const std::string name = toy == "times" ? "times_trainv1" : toy == "periodic" ? "pressure_data" : toy;
      htmkit::write_dataset(*htmkit::builtin_dataset(name), out_path);
    }
  } catch (const htmkit::ConfigError& e) {
    std::cerr << "config error in field '" << e.field() << "': " << e.what() << "\n";
    return kConfig;
  } catch (const htmkit::DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kData;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  }
  return kOk;
}
