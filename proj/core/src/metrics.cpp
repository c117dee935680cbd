#include <htmkit/metrics.hpp>

#include <cmath>
#include <string>

#include <nlohmann/json.hpp>

#include <htmkit/errors.hpp>

namespace htmkit {

namespace {

void check_lengths(std::span<const double> truth, std::span<const double> pred, const char* what) {
  if (truth.empty()) throw DataError(std::string(what) + ": empty input");
  if (truth.size() != pred.size()) {
    throw DataError(std::string(what) + ": length mismatch (" + std::to_string(truth.size()) +
                    " vs " + std::to_string(pred.size()) + ")");
  }
}

}  // namespace

double rmse(std::span<const double> truth, std::span<const double> pred) {
  check_lengths(truth, pred, "rmse");
  double sum = 0.0;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    const double d = truth[i] - pred[i];
    sum += d * d;
  }
  return std::sqrt(sum / static_cast<double>(truth.size()));
}

MapeResult mape(std::span<const double> truth, std::span<const double> pred) {
  check_lengths(truth, pred, "mape");
  MapeResult r;
  double sum = 0.0;
  std::size_t used = 0;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    if (truth[i] == 0.0) {
      ++r.excluded_zero_terms;
      continue;
    }
    sum += std::abs(truth[i] - pred[i]) / std::abs(truth[i]);
    ++used;
  }
  if (used == 0) throw UndefinedMetricError("mape: every truth term is zero");
  r.percent = 100.0 * sum / static_cast<double>(used);
  return r;
}

double accuracy(std::span<const double> truth, std::span<const double> pred) {
  check_lengths(truth, pred, "accuracy");
  std::size_t hits = 0;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    if (truth[i] == pred[i]) ++hits;
  }
  return 100.0 * static_cast<double>(hits) / static_cast<double>(truth.size());
}

MetricReport evaluate(std::span<const double> truth, std::span<const double> pred) {
  MetricReport m;
  m.rmse = rmse(truth, pred);
  m.accuracy = accuracy(truth, pred);
  try {
    const auto r = mape(truth, pred);
    m.mape = r.percent;
    m.excluded_zero_terms = r.excluded_zero_terms;
  } catch (const UndefinedMetricError&) {
    m.mape = 0.0;
    m.excluded_zero_terms = truth.size();
  }
  return m;
}

void to_json(nlohmann::json& j, const MetricReport& m) {
  j = nlohmann::json{{"rmse", m.rmse},
                     {"mape", m.mape},
                     {"accuracy", m.accuracy},
                     {"excluded_zero_terms", m.excluded_zero_terms}};
}

}  // namespace htmkit
