#pragma once

#include <cstddef>
#include <span>

#include <nlohmann/json_fwd.hpp>

namespace htmkit {

/// Error metrics between original and recognized values.
struct MetricReport {
  double rmse = 0.0;
  double mape = 0.0;      // percent
  double accuracy = 0.0;  // percent
  std::size_t excluded_zero_terms = 0;
};

/// sqrt(mean((truth - pred)^2)). Throws DataError on empty or mismatched input.
double rmse(std::span<const double> truth, std::span<const double> pred);

struct MapeResult {
  double percent = 0.0;
  std::size_t excluded_zero_terms = 0;
};

/// 100 * mean(|truth - pred| / |truth|) over terms with truth != 0.
/// Zero-truth terms are excluded and counted. Throws UndefinedMetricError
/// when every term is excluded.
MapeResult mape(std::span<const double> truth, std::span<const double> pred);

/// 100 * matching positions / length.
double accuracy(std::span<const double> truth, std::span<const double> pred);

/// All three metrics over the same vectors. MAPE falls back to 0 with every
/// term excluded when truth is all zero, so reports stay total.
MetricReport evaluate(std::span<const double> truth, std::span<const double> pred);

void to_json(nlohmann::json& j, const MetricReport& m);

}  // namespace htmkit
