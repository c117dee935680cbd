#include <gtest/gtest.h>

#include <htmkit/encoders.hpp>
#include <htmkit/errors.hpp>
#include <htmkit/rng.hpp>
#include <htmkit/spatial_pooler.hpp>

#include "oracles.hpp"

using htmkit::ProximalPermanences;
using htmkit::Sdr;

TEST(ColumnOverlaps, NothingConnectedScoresZero) {
  ProximalPermanences p(3, 4, 0.5);
  for (std::size_t c = 0; c < 3; ++c)
    for (std::size_t b = 0; b < 4; ++b) p.set(c, b, 0.49);
  EXPECT_EQ(column_overlaps(Sdr(4, {0, 1, 2, 3}), p, 0), (std::vector<std::uint32_t>{0, 0, 0}));
}

TEST(ColumnOverlaps, EmptyInputScoresZero) {
  ProximalPermanences p(2, 4, 0.2);
  p.set(0, 0, 1.0);
  EXPECT_EQ(column_overlaps(Sdr(4), p, 0), (std::vector<std::uint32_t>{0, 0}));
}

TEST(ColumnOverlaps, MinOverlapCutsOffWeakColumns) {
  ProximalPermanences p(2, 3, 0.21);
  p.set(0, 0, 0.5);
  p.set(0, 1, 0.21);  // exactly at threshold counts as connected
  p.set(1, 2, 0.9);
  EXPECT_EQ(column_overlaps(Sdr(3, {0, 1, 2}), p, 2), (std::vector<std::uint32_t>{2, 0}));
}

TEST(ColumnOverlaps, WidthMismatchThrows) {
  ProximalPermanences p(2, 3, 0.21);
  EXPECT_THROW(column_overlaps(Sdr(4), p, 0), htmkit::StructuralError);
}

TEST(Inhibit, Examples) {
  EXPECT_TRUE(htmkit::inhibit(std::vector<std::uint32_t>{0, 0, 0}, 2).winners.empty());
  EXPECT_EQ(htmkit::inhibit(std::vector<std::uint32_t>{5, 1, 4, 4}, 2).winners, Sdr(4, {0, 2}));
  EXPECT_EQ(htmkit::inhibit(std::vector<std::uint32_t>{3}, 2).winners, Sdr(1, {0}));
}

TEST(Inhibit, MinWinnerOverlap) {
  const auto r = htmkit::inhibit(std::vector<std::uint32_t>{5, 1, 4, 4}, 2);
  EXPECT_EQ(r.min_winner_overlap(), 4u);
}

TEST(Permanences, SetClampsToUnitInterval) {
  ProximalPermanences p(1, 2, 0.21);
  p.set(0, 0, 1.7);
  p.set(0, 1, -0.3);
  EXPECT_EQ(p.at(0, 0), 1.0);
  EXPECT_EQ(p.at(0, 1), 0.0);
  EXPECT_TRUE(p.connected(0, 0));
  EXPECT_FALSE(p.connected(0, 1));
}

TEST(Permanences, InvalidThresholdThrows) {
  EXPECT_THROW(ProximalPermanences(1, 1, 0.0), htmkit::ConfigError);
  EXPECT_THROW(ProximalPermanences(1, 1, 1.0), htmkit::ConfigError);
}

TEST(PoolerConfig, ExactlyOneSparsityMode) {
  htmkit::PoolerConfig cfg;
  cfg.sparsity_percent = 2.0;
  EXPECT_THROW(cfg.validate(), htmkit::ConfigError);
  cfg.desired_local_activity.reset();
  EXPECT_NO_THROW(cfg.validate());
  EXPECT_EQ(cfg.winner_count(), 3u);  // 2% of 128 rounds to 3
  cfg.sparsity_percent.reset();
  EXPECT_THROW(cfg.validate(), htmkit::ConfigError);
}

TEST(PoolerProperties, AgreesWithBruteForce) {
  htmkit::Rng rng(17);
  for (int t = 0; t < 2000; ++t) {
    const auto cols = 1 + rng.index(12), width = 1 + rng.index(16);
    const double th = 0.05 + 0.9 * rng.uniform();
    auto perms = ProximalPermanences::sample(cols, width, th, 0.5, rng);
    std::vector<oracle::Perms> dense(cols, oracle::Perms(width));
    for (std::size_t c = 0; c < cols; ++c)
      for (std::size_t b = 0; b < width; ++b) dense[c][b] = perms.at(c, b);
    oracle::Bits in(width, 0);
    std::vector<std::uint32_t> active;
    for (std::uint32_t b = 0; b < width; ++b) {
      if (rng.index(2)) {
        in[b] = 1;
        active.push_back(b);
      }
    }
    htmkit::PoolerConfig cfg;
    cfg.columns = cols;
    cfg.min_overlap = rng.index(3);
    cfg.desired_local_activity = 1 + rng.index(cols);
    const auto r = pool(Sdr(width, active), perms, cfg);
    const auto scores = oracle::column_scores(in, dense, th, cfg.min_overlap);
    const auto win = oracle::winners(scores, *cfg.desired_local_activity);
    ASSERT_LE(r.winners.size(), *cfg.desired_local_activity);
    for (std::size_t c = 0; c < cols; ++c) {
      ASSERT_EQ(r.raw_overlaps[c], scores[c]);
      ASSERT_EQ(r.winners.contains(static_cast<std::uint32_t>(c)), win[c] == 1);
    }
    for (double v : perms.values()) {
      ASSERT_GE(v, 0.0);
      ASSERT_LE(v, 1.0);
    }
  }
}

TEST(DecodePooled, MapsToLowestBestPriorRow) {
  const htmkit::MixedIntegerSequence orig{{{1}, {2}, {3}}};
  const std::vector<Sdr> pooled{Sdr(8, {0, 1}), Sdr(8, {2, 3}), Sdr(8, {0, 1})};
  const auto d = htmkit::decode_pooled(pooled, orig);
  EXPECT_EQ(d.rows, (std::vector<htmkit::IntegerRow>{{1}, {2}, {1}}));
}

namespace {

htmkit::PoolerConfig small_config(std::size_t iters) {
  htmkit::PoolerConfig cfg;
  cfg.columns = 32;
  cfg.iters = iters;
  cfg.threads = 1;
  return cfg;
}

}  // namespace

TEST(EvolveSdr, SingleIteration) {
  const htmkit::MixedIntegerSequence data{{{1, 2}, {3, 4}, {5, 6}}};
  const htmkit::RowEncoder enc(data, htmkit::EncoderMode::scalar, 16, 3);
  const auto r = htmkit::evolve_sdr(data, enc, small_config(1), 9);
  EXPECT_EQ(r.trace.mape.size(), 1u);
  EXPECT_EQ(r.trace.best_iteration, 0u);
}

TEST(EvolveSdr, PerfectReconstructionHasZeroMape) {
  const htmkit::MixedIntegerSequence data{{{5, 7}, {5, 7}, {5, 7}}};
  const htmkit::RowEncoder enc(data, htmkit::EncoderMode::scalar, 16, 3);
  const auto r = htmkit::evolve_sdr(data, enc, small_config(10), 4);
  for (double m : r.trace.mape) EXPECT_EQ(m, 0.0);
}

TEST(EvolveSdr, RunningMinimumIsNonIncreasing) {
  const auto ds = htmkit::MixedIntegerSequence{{{1, 9}, {2, 8}, {3, 7}, {4, 6}, {5, 5}, {6, 4}}};
  const htmkit::RowEncoder enc(ds, htmkit::EncoderMode::scalar, 16, 3);
  const auto r = htmkit::evolve_sdr(ds, enc, small_config(50), 2);
  const auto rm = r.trace.running_min();
  ASSERT_EQ(rm.size(), 50u);
  for (std::size_t i = 1; i < rm.size(); ++i) EXPECT_LE(rm[i], rm[i - 1]);
  EXPECT_EQ(rm.back(), r.trace.mape[r.trace.best_iteration]);
}

TEST(EvolveSdr, ThreadCountDoesNotChangeResults) {
  const auto ds = htmkit::MixedIntegerSequence{{{1, 9}, {2, 8}, {3, 7}, {4, 6}}};
  const htmkit::RowEncoder enc(ds, htmkit::EncoderMode::scalar, 16, 3);
  auto cfg = small_config(20);
  const auto a = htmkit::evolve_sdr(ds, enc, cfg, 7);
  cfg.threads = 4;
  const auto b = htmkit::evolve_sdr(ds, enc, cfg, 7);
  EXPECT_EQ(a.trace.mape, b.trace.mape);
  EXPECT_EQ(a.decoded.rows, b.decoded.rows);
}

TEST(EvolveSdr, AllZeroDataIsDataError) {
  const htmkit::MixedIntegerSequence data{{{0}, {0}}};
  const htmkit::RowEncoder enc(data, htmkit::EncoderMode::scalar, 16, 3);
  EXPECT_THROW(htmkit::evolve_sdr(data, enc, small_config(2), 1), htmkit::DataError);
}

TEST(EvolveSdr, SeqSizeTruncates) {
  const htmkit::MixedIntegerSequence data{{{1}, {2}, {3}, {4}}};
  const htmkit::RowEncoder enc(data, htmkit::EncoderMode::scalar, 16, 3);
  auto cfg = small_config(2);
  cfg.seq_size = 2;
  EXPECT_EQ(htmkit::evolve_sdr(data, enc, cfg, 1).pooled.size(), 2u);
}
