#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <unordered_set>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include <htmkit/encoders.hpp>
#include <htmkit/sdr.hpp>

namespace htmkit {

/// A stored exemplar: its integer (char-integer) view and pooled SDR view.
struct RecognitionUnit {
  std::uint64_t id = 0;
  IntegerRow integer_row;
  Sdr sdr_row;
};

struct PredictionOutcome {
  IntegerRow predicted_row;
  std::uint64_t source_unit = 0;
  std::size_t score = 0;
  /// Maximum achievable score for the query.
  std::size_t max_score = 0;
  bool accepted = false;
};

/// Score threshold for acceptance: ceil(per_adjust / 100 * max_score).
std::size_t acceptance_threshold(double per_adjust, std::size_t max_score);

/// Positional score: positions where the prefix holds a nonzero code equal
/// to the row's code at the same position.
std::size_t positional_score(std::span<const double> prefix, std::span<const double> row);

/// Recognition units backing the greedy prefix search. Ingest is
/// single-writer; concurrent queries on an unchanging store are safe.
class RecognitionStore {
public:
  /// Throws StructuralError on a duplicate id.
  void ingest(RecognitionUnit unit);

  std::size_t size() const { return units_.size(); }
  bool empty() const { return units_.empty(); }
  std::span<const RecognitionUnit> units() const { return units_; }

private:
  std::vector<RecognitionUnit> units_;
  std::unordered_set<std::uint64_t> ids_;
};

/// Best unit for `prefix` by positional score (ties to the lowest id); the
/// outcome carries the unit's full row as the completion.
///
/// Throws StateError on an empty store, DataError on an all-zero prefix.
PredictionOutcome greedy_predict(std::span<const double> prefix, const RecognitionStore& store,
                                 double per_adjust);

/// Same search scored by SDR overlap against the units' pooled rows.
PredictionOutcome greedy_predict_sdr(const Sdr& query, const RecognitionStore& store,
                                     double per_adjust);

/// One outcome per input row, in order. Rejected rows keep their best
/// candidate with accepted = false.
std::vector<PredictionOutcome> predict_all(const MixedIntegerSequence& inputs,
                                           const RecognitionStore& store, double per_adjust);

void to_json(nlohmann::json& j, const PredictionOutcome& p);

}  // namespace htmkit
