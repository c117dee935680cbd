#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include <nlohmann/json.hpp>

#include <htmkit/errors.hpp>
#include <htmkit/rng.hpp>
#include <htmkit/sdr.hpp>

using htmkit::Sdr;

namespace {

std::size_t brute_overlap(const Sdr& a, const Sdr& b) {
  std::size_t n = 0;
  for (std::size_t i = 0; i < a.width(); ++i) n += (a.contains(i) && b.contains(i)) ? 1 : 0;
  return n;
}

Sdr random_sdr(htmkit::Rng& rng, std::size_t width) {
  std::vector<std::uint32_t> bits;
  for (std::uint32_t i = 0; i < width; ++i) {
    if (rng.index(4) == 0) bits.push_back(i);
  }
  return Sdr(width, bits);
}

}  // namespace

TEST(Sdr, ConstructionSortsAndDeduplicates) {
  const Sdr s(10, {7, 1, 7, 3});
  EXPECT_EQ(std::vector<std::uint32_t>(s.active().begin(), s.active().end()),
            (std::vector<std::uint32_t>{1, 3, 7}));
  EXPECT_DOUBLE_EQ(s.sparsity(), 0.3);
}

TEST(Sdr, RejectsOutOfRangeBits) {
  EXPECT_THROW(Sdr(4, {4}), htmkit::StructuralError);
}

TEST(Sdr, ZeroWidthIsRejected) {
  EXPECT_THROW(Sdr(0), htmkit::StructuralError);
}

TEST(Sdr, DenseRoundTrip) {
  const Sdr s(6, {0, 2, 5});
  const auto d = s.dense();
  EXPECT_EQ(Sdr::from_dense(d), s);
}

TEST(Overlap, DisjointIsZero) {
  EXPECT_EQ(overlap(Sdr(8, {0, 2, 4}), Sdr(8, {1, 3, 5})).value, 0u);
}

TEST(Overlap, IdentityCountsAllBits) {
  const Sdr a(8, {1, 3, 5});
  EXPECT_EQ(overlap(a, a).value, 3u);
}

TEST(Overlap, PartialMatchesBruteForce) {
  const Sdr a(16, {1, 3, 5}), b(16, {3, 5, 9});
  EXPECT_EQ(overlap(a, b).value, 2u);
  EXPECT_EQ(overlap(a, b).value, brute_overlap(a, b));
}

TEST(Overlap, WidthMismatchThrows) {
  EXPECT_THROW(overlap(Sdr(4), Sdr(5)), htmkit::StructuralError);
}

TEST(Union, Examples) {
  EXPECT_EQ(union_of(Sdr(8, {0, 1}), Sdr(8)), Sdr(8, {0, 1}));
  EXPECT_EQ(union_of(Sdr(8, {1, 3}), Sdr(8, {1, 3})), Sdr(8, {1, 3}));
  EXPECT_EQ(union_of(Sdr(8, {1, 3}), Sdr(8, {2, 3, 7})), Sdr(8, {1, 2, 3, 7}));
}

TEST(TopK, TieBrokenByLowestIndex) {
  const std::vector<std::pair<std::uint32_t, double>> scores{{0, 5}, {1, 3}, {2, 5}};
  EXPECT_EQ(htmkit::top_k(scores, 2), (std::vector<std::uint32_t>{0, 2}));
}

TEST(TopK, ZeroScoresNeverWin) {
  const std::vector<std::pair<std::uint32_t, double>> scores{{0, 0}, {1, 0}};
  EXPECT_TRUE(htmkit::top_k(scores, 2).empty());
}

TEST(TopK, KLargerThanCandidates) {
  const std::vector<std::pair<std::uint32_t, double>> scores{{0, 7}};
  EXPECT_EQ(htmkit::top_k(scores, 3), (std::vector<std::uint32_t>{0}));
}

TEST(TopK, InvalidArgumentsThrow) {
  const std::vector<std::pair<std::uint32_t, double>> none;
  const std::vector<std::pair<std::uint32_t, double>> one{{0, 1}};
  EXPECT_THROW(htmkit::top_k(none, 1), htmkit::StructuralError);
  EXPECT_THROW(htmkit::top_k(one, 0), htmkit::StructuralError);
}

TEST(SdrProperties, RandomizedAlgebra) {
  htmkit::Rng rng(11);
  for (int t = 0; t < 2000; ++t) {
    const auto width = 1 + rng.index(40);
    const auto a = random_sdr(rng, width), b = random_sdr(rng, width);
    const auto u = union_of(a, b);
    ASSERT_EQ(overlap(a, b), overlap(b, a));
    ASSERT_EQ(overlap(a, b).value, brute_overlap(a, b));
    ASSERT_EQ(u.size() + overlap(a, b).value, a.size() + b.size());
    ASSERT_EQ(union_of(a, a), a);
    ASSERT_GE(a.sparsity(), 0.0);
    ASSERT_LE(a.sparsity(), 1.0);
    ASSERT_TRUE(std::is_sorted(u.active().begin(), u.active().end()));
  }
}

TEST(SdrJson, RoundTrip) {
  const Sdr s(12, {2, 11});
  nlohmann::json j = s;
  EXPECT_EQ(j.get<Sdr>(), s);
}
