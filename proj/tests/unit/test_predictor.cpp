#include <gtest/gtest.h>

#include <cmath>

#include <htmkit/data_io.hpp>
#include <htmkit/encoders.hpp>
#include <htmkit/errors.hpp>
#include <htmkit/predictor.hpp>
#include <htmkit/rng.hpp>

using namespace htmkit;

namespace {

RecognitionStore store_of(const std::vector<IntegerRow>& rows) {
  RecognitionStore s;
  for (std::size_t r = 0; r < rows.size(); ++r) s.ingest(RecognitionUnit{r, rows[r], Sdr(1)});
  return s;
}

// Exhaustive scorer written against the definition: count positions where the
// prefix is nonzero and equal to the row.
std::size_t naive_score(const IntegerRow& prefix, const IntegerRow& row) {
  std::size_t s = 0;
  for (std::size_t k = 0; k < prefix.size() && k < row.size(); ++k) s += (prefix[k] != 0 && prefix[k] == row[k]) ? 1 : 0;
  return s;
}

}  // namespace

TEST(RecognitionStore, IngestAndDuplicates) {
  RecognitionStore s;
  s.ingest(RecognitionUnit{0, {1, 2}, Sdr(4)});
  EXPECT_EQ(s.size(), 1u);
  EXPECT_THROW(s.ingest(RecognitionUnit{0, {3, 4}, Sdr(4)}), StructuralError);
}

TEST(RecognitionStore, HoldsAFullWindow) {
  RecognitionStore s;
  for (std::uint64_t r = 0; r < 700; ++r) s.ingest(RecognitionUnit{r, {static_cast<double>(r)}, Sdr(1)});
  EXPECT_EQ(s.size(), 700u);
}

TEST(AcceptanceThreshold, PercentOfMaximum) {
  EXPECT_EQ(acceptance_threshold(99, 10), 10u);
  EXPECT_EQ(acceptance_threshold(0, 10), 0u);
  EXPECT_EQ(acceptance_threshold(50, 3), 2u);
}

TEST(GreedyPredict, TimesTableCompletion) {
  const auto ds = generate_times_table(12);
  std::vector<IntegerRow> rows(ds.records.rows.begin(), ds.records.rows.end() - 1);
  const auto store = store_of(rows);
  const auto out = greedy_predict(IntegerRow{2, 3, 0}, store, 99);
  EXPECT_EQ(out.predicted_row, (IntegerRow{2, 3, 6}));
  EXPECT_TRUE(out.accepted);
}

TEST(GreedyPredict, ExactRowIsReturnedWithMaximalScore) {
  const auto store = store_of({{1, 2, 3}, {4, 5, 6}});
  const auto out = greedy_predict(IntegerRow{4, 5, 6}, store, 99);
  EXPECT_EQ(out.predicted_row, (IntegerRow{4, 5, 6}));
  EXPECT_EQ(out.score, 3u);
  EXPECT_EQ(out.max_score, 3u);
  EXPECT_TRUE(out.accepted);
}

TEST(GreedyPredict, TextPrefixCompletes) {
  const auto ds = text_dataset("w", {"Football", "Fans", "Foo"});
  const auto store = store_of({ds.records.rows[0], ds.records.rows[1]});
  const auto out = greedy_predict(ds.records.rows[2], store, 99);
  EXPECT_EQ(decode_row(out.predicted_row).substr(0, 4), "Foot");
}

TEST(GreedyPredict, TiesGoToLowestId) {
  const auto store = store_of({{1, 9}, {1, 8}});
  EXPECT_EQ(greedy_predict(IntegerRow{1, 0}, store, 99).source_unit, 0u);
}

TEST(GreedyPredict, Errors) {
  RecognitionStore empty;
  EXPECT_THROW(greedy_predict(IntegerRow{1}, empty, 99), StateError);
  EXPECT_THROW(greedy_predict(IntegerRow{0, 0}, store_of({{1, 2}}), 99), DataError);
}

TEST(PredictAll, IdenticalRowsAllAccepted) {
  const std::vector<IntegerRow> rows{{1, 2}, {3, 4}, {5, 6}};
  const auto out = predict_all(MixedIntegerSequence{rows}, store_of(rows), 99);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    EXPECT_TRUE(out[r].accepted);
    EXPECT_EQ(out[r].score, out[r].max_score);
    EXPECT_EQ(out[r].predicted_row, rows[r]);
  }
}

TEST(PredictAll, ZeroPercentAcceptsEverything) {
  const auto out = predict_all(MixedIntegerSequence{{{7, 7}, {9, 9}}}, store_of({{1, 2}}), 0);
  for (const auto& o : out) EXPECT_TRUE(o.accepted);
}

TEST(PredictAll, NearDuplicateRejectedAt99) {
  IntegerRow stored(10), query(10);
  for (int k = 0; k < 10; ++k) stored[k] = query[k] = k + 1;
  query[4] = 42;
  const auto store = store_of({stored});
  const auto out = predict_all(MixedIntegerSequence{{query}}, store, 99);
  EXPECT_EQ(out[0].score, 9u);
  EXPECT_EQ(out[0].score, naive_score(query, stored));
  EXPECT_FALSE(out[0].accepted);
}

TEST(GreedyPredictSdr, BestOverlapWins) {
  RecognitionStore s;
  s.ingest(RecognitionUnit{0, {1}, Sdr(8, {0, 1})});
  s.ingest(RecognitionUnit{1, {2}, Sdr(8, {2, 3})});
  const auto out = greedy_predict_sdr(Sdr(8, {2, 3}), s, 99);
  EXPECT_EQ(out.predicted_row, (IntegerRow{2}));
  EXPECT_TRUE(out.accepted);
}

TEST(PredictorProperties, MatchesExhaustiveArgmax) {
  Rng rng(8);
  for (int t = 0; t < 1000; ++t) {
    const auto width = 1 + rng.index(6);
    std::vector<IntegerRow> rows(1 + rng.index(6), IntegerRow(width));
    for (auto& r : rows)
      for (auto& v : r) v = static_cast<double>(rng.index(3));
    IntegerRow prefix(width);
    for (auto& v : prefix) v = static_cast<double>(rng.index(3));
    prefix[0] = 1;
    const double per = 100.0 * rng.uniform();
    const auto out = greedy_predict(prefix, store_of(rows), per);
    std::size_t best = 0, best_id = 0, max = 0;
    for (double v : prefix) max += v != 0 ? 1 : 0;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      const auto s = naive_score(prefix, rows[r]);
      if (s > best) {
        best = s;
        best_id = r;
      }
    }
    ASSERT_EQ(out.score, best);
    ASSERT_EQ(out.source_unit, best_id);
    ASSERT_EQ(out.max_score, max);
    ASSERT_EQ(out.accepted, static_cast<double>(best) >= std::ceil(per * static_cast<double>(max) / 100.0));
  }
}
