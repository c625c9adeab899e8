#include "fstgec/scoring.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "fstgec/error.hpp"

namespace fstgec {
namespace {

using Words = std::vector<std::string>;

M2Record Record(Words source, std::vector<EditSpan> edits) {
  M2Record r;
  r.source = std::move(source);
  r.annotators[0] = std::move(edits);
  return r;
}

TEST(FBetaTest, KnownValues) {
  EXPECT_DOUBLE_EQ(FBeta(1.0, 1.0, 0.5), 1.0);
  EXPECT_NEAR(FBeta(0.4237, 0.1992, 0.5), 0.3458, 1e-4);
  EXPECT_EQ(FBeta(0.0, 0.0, 0.5), 0.0);
  EXPECT_DOUBLE_EQ(FBeta(0.5, 0.5, 1.0), 0.5);
}

TEST(FBetaTest, MonotoneInPrecisionAndRecall) {
  for (int i = 1; i <= 20; ++i) {
    for (int j = 1; j <= 20; ++j) {
      const double p = i / 20.0, r = j / 20.0;
      if (i < 20) EXPECT_LE(FBeta(p, r, 0.5), FBeta(p + 0.05, r, 0.5) + 1e-15);
      if (j < 20) EXPECT_LE(FBeta(p, r, 0.5), FBeta(p, r + 0.05, 0.5) + 1e-15);
    }
  }
}

TEST(MakeReportTest, ZeroOverZeroIsOne) {
  const ScoreReport r = MakeReport(0, 0, 0);
  EXPECT_EQ(r.precision, 1.0);
  EXPECT_EQ(r.recall, 1.0);
  EXPECT_EQ(r.f_half, 1.0);
  EXPECT_EQ(MakeReport(1, 1, 1).Line(), "1 1 1 0.5000 0.5000 0.5000");
}

TEST(ScoreCorpusTest, PerfectHypotheses) {
  const std::vector<M2Record> gold = {Record({"a", "b"}, {MakeEdit(1, 2, {"c"})}),
                                      Record({"x", "y"}, {MakeEdit(0, 1, {})})};
  const ScoreReport r = ScoreCorpus({{"a", "c"}, {"y"}}, gold);
  EXPECT_EQ(r.tp, 2u);
  EXPECT_EQ(r.f_half, 1.0);
}

TEST(ScoreCorpusTest, NoEditsProposed) {
  const std::vector<M2Record> gold = {Record({"a", "b"}, {MakeEdit(1, 2, {"c"})})};
  const ScoreReport r = ScoreCorpus({{"a", "b"}}, gold);
  EXPECT_EQ(r.precision, 1.0);
  EXPECT_EQ(r.recall, 0.0);
  EXPECT_EQ(r.f_half, 0.0);
}

TEST(ScoreCorpusTest, OneCorrectOneSpurious) {
  const std::vector<M2Record> gold = {
      Record({"a", "b", "c", "d", "e"}, {MakeEdit(1, 2, {"x"}), MakeEdit(4, 5, {"y"})})};
  // Fixes b -> x, leaves e alone and adds a spurious edit on d.
  const ScoreReport r = ScoreCorpus({{"a", "x", "c", "z", "e"}}, gold);
  EXPECT_EQ(r.tp, 1u);
  EXPECT_EQ(r.fp, 1u);
  EXPECT_EQ(r.fn, 1u);
  EXPECT_DOUBLE_EQ(r.precision, 0.5);
  EXPECT_DOUBLE_EQ(r.recall, 0.5);
  EXPECT_DOUBLE_EQ(r.f_half, 0.5);
}

TEST(ScoreCorpusTest, PicksBestAnnotatorPerSentence) {
  M2Record r;
  r.source = {"a", "b"};
  r.annotators[0] = {MakeEdit(1, 2, {"x"})};
  r.annotators[1] = {MakeEdit(1, 2, {"y"})};
  r.annotators[2] = {};
  const ScoreReport with_y = ScoreCorpus({{"a", "y"}}, {r});
  EXPECT_EQ(with_y.tp, 1u);
  EXPECT_EQ(with_y.fn, 0u);
  // Leaving the sentence alone matches the annotator who marked it correct.
  const ScoreReport untouched = ScoreCorpus({{"a", "b"}}, {r});
  EXPECT_EQ(untouched.fn, 0u);
  EXPECT_EQ(untouched.f_half, 1.0);
}

TEST(ScoreCorpusTest, UnannotatedSentenceCountsEditsAsFalsePositives) {
  M2Record r;
  r.source = {"a", "b"};
  const ScoreReport s = ScoreCorpus({{"b"}}, {r});
  EXPECT_EQ(s.fp, 1u);
  EXPECT_EQ(s.tp, 0u);
}

TEST(ScoreCorpusTest, LengthMismatch) {
  EXPECT_THROW(ScoreCorpus({{"a"}}, {}), InputError);
}

TEST(ScoreCorpusTest, PermutationInvariant) {
  std::mt19937_64 rng(12);
  const Words vocab = {"a", "b", "c"};
  std::vector<M2Record> gold;
  std::vector<Words> hyps;
  for (int i = 0; i < 40; ++i) {
    Words src(1 + rng() % 5);
    for (auto& w : src) w = vocab[rng() % 3];
    Words fixed = src;
    fixed[rng() % fixed.size()] = "z";
    gold.push_back(Record(src, ExtractEdits(src, fixed)));
    hyps.push_back(rng() % 2 ? fixed : src);
  }
  const ScoreReport before = ScoreCorpus(hyps, gold);
  std::vector<std::size_t> order(gold.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<M2Record> g2;
  std::vector<Words> h2;
  for (auto i : order) {
    g2.push_back(gold[i]);
    h2.push_back(hyps[i]);
  }
  const ScoreReport after = ScoreCorpus(h2, g2);
  EXPECT_EQ(after.tp, before.tp);
  EXPECT_EQ(after.fp, before.fp);
  EXPECT_EQ(after.fn, before.fn);
}

TEST(EditTypeStatsTest, SingleMissingEdit) {
  const EditTypeStats s = CountEditTypes({Record({"a", "b", "c", "d"}, {MakeEdit(1, 1, {"x"})})});
  EXPECT_EQ(s.counts[0], 1u);
  EXPECT_DOUBLE_EQ(s.PerSentence(s.counts[0]), 1.0);
  EXPECT_DOUBLE_EQ(s.PerWord(s.counts[0]), 0.25);
  EXPECT_NE(s.Format().find("Missing"), std::string::npos);
  EXPECT_NE(s.Format().find("25.00%"), std::string::npos);
}

TEST(EditTypeStatsTest, EmptyCorpusIsZero) {
  const EditTypeStats s = CountEditTypes({});
  EXPECT_EQ(s.Total(), 0u);
  EXPECT_EQ(s.PerSentence(0), 0.0);
  EXPECT_EQ(s.PerWord(0), 0.0);
}

TEST(EditTypeStatsTest, KindsSumToTotal) {
  const EditTypeStats s = CountEditTypes(
      {Record({"a", "b", "c"}, {MakeEdit(0, 0, {"x"}), MakeEdit(1, 2, {}), MakeEdit(2, 3, {"y"})}),
       Record({"d"}, {MakeEdit(0, 1, {"e"})})});
  EXPECT_EQ(s.counts[0] + s.counts[1] + s.counts[2], s.Total());
  EXPECT_EQ(s.counts[1], 2u);
  EXPECT_EQ(s.words, 4u);
  EXPECT_EQ(s.sentences, 2u);
}

}  // namespace
}  // namespace fstgec
