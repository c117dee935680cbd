#include <htmkit/predictor.hpp>

#include <algorithm>
#include <cmath>
#include <string>

#include <nlohmann/json.hpp>

#include <htmkit/errors.hpp>

namespace htmkit {

std::size_t acceptance_threshold(double per_adjust, std::size_t max_score) {
  const double t = std::ceil(per_adjust * static_cast<double>(max_score) / 100.0);
  return t <= 0.0 ? 0 : static_cast<std::size_t>(t);
}

std::size_t positional_score(std::span<const double> prefix, std::span<const double> row) {
  const auto n = std::min(prefix.size(), row.size());
  std::size_t score = 0;
  for (std::size_t k = 0; k < n; ++k) {
    if (prefix[k] != 0.0 && prefix[k] == row[k]) ++score;
  }
  return score;
}

void RecognitionStore::ingest(RecognitionUnit unit) {
  if (!ids_.insert(unit.id).second) {
    throw StructuralError("ingest: duplicate recognition unit id " + std::to_string(unit.id));
  }
  units_.push_back(std::move(unit));
}

namespace {

template <typename ScoreFn>
PredictionOutcome search(const RecognitionStore& store, std::size_t max_score, double per_adjust,
                         ScoreFn score_of) {
  if (store.empty()) throw StateError("greedy_predict: nothing learned (empty store)");
  const RecognitionUnit* best = nullptr;
  std::size_t best_score = 0;
  for (const auto& unit : store.units()) {
    const auto s = score_of(unit);
    if (best == nullptr || s > best_score || (s == best_score && unit.id < best->id)) {
      best = &unit;
      best_score = s;
    }
  }
  PredictionOutcome out;
  out.predicted_row = best->integer_row;
  out.source_unit = best->id;
  out.score = best_score;
  out.max_score = max_score;
  out.accepted = best_score >= acceptance_threshold(per_adjust, max_score);
  return out;
}

}  // namespace

PredictionOutcome greedy_predict(std::span<const double> prefix, const RecognitionStore& store,
                                 double per_adjust) {
  if (store.empty()) throw StateError("greedy_predict: nothing learned (empty store)");
  const auto max_score =
      static_cast<std::size_t>(std::count_if(prefix.begin(), prefix.end(), [](double v) { return v != 0.0; }));
  if (max_score == 0) throw DataError("greedy_predict: prefix has no nonzero codes");
  return search(store, max_score, per_adjust,
                [&](const RecognitionUnit& u) { return positional_score(prefix, u.integer_row); });
}

PredictionOutcome greedy_predict_sdr(const Sdr& query, const RecognitionStore& store,
                                     double per_adjust) {
  if (store.empty()) throw StateError("greedy_predict: nothing learned (empty store)");
  if (query.empty()) throw DataError("greedy_predict: query SDR has no active bits");
  return search(store, query.size(), per_adjust,
                [&](const RecognitionUnit& u) { return overlap(query, u.sdr_row).value; });
}

std::vector<PredictionOutcome> predict_all(const MixedIntegerSequence& inputs,
                                           const RecognitionStore& store, double per_adjust) {
  if (store.empty()) throw StateError("predict_all: nothing learned (empty store)");
  std::vector<PredictionOutcome> out;
  out.reserve(inputs.size());
  for (const auto& row : inputs.rows) out.push_back(greedy_predict(row, store, per_adjust));
  return out;
}

void to_json(nlohmann::json& j, const PredictionOutcome& p) {
  j = nlohmann::json{{"predicted_row", p.predicted_row},
                     {"source_unit", p.source_unit},
                     {"score", p.score},
                     {"max_score", p.max_score},
                     {"accepted", p.accepted}};
}

}  // namespace htmkit
