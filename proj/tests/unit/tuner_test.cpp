#include "fstgec/tuner.hpp"

#include <gtest/gtest.h>

#include "synthetic.hpp"

namespace fstgec {
namespace {

using Words = std::vector<std::string>;

const testing::DeskScaleSetup& SmallSetup() {
  static const testing::DeskScaleSetup setup = testing::MakeDeskScaleSetup(31, 1500, 40, 40, 300);
  return setup;
}

LmEnsemble Lm() { return LmEnsemble({SmallSetup().lm}); }

TunerOptions FastOptions() {
  TunerOptions o;
  o.max_cycles = 3;
  o.tolerance = 0.5;
  o.beam = 4;
  return o;
}

TEST(CorrectSentencesTest, PreservesOrderAcrossThreads) {
  const auto& setup = SmallSetup();
  std::vector<Words> sources;
  for (const auto& r : setup.dev) sources.push_back(r.source);
  CascadeResources res = setup.res;
  res.penalties = {2.0, 2.0, 2.0};
  const auto serial = CorrectSentences(sources, res, Lm(), 4, 1);
  const auto parallel = CorrectSentences(sources, res, Lm(), 4, 3);
  EXPECT_EQ(serial, parallel);
  for (std::size_t i = 0; i < sources.size(); ++i) {
    EXPECT_EQ(serial[i], CorrectSentence(sources[i], res, Lm(), 4));
  }
}

TEST(CorrectSentencesTest, HighPenaltiesReturnInput) {
  const auto& setup = SmallSetup();
  CascadeResources res = setup.res;
  res.penalties = {1000.0, 1000.0, 1000.0};
  for (const auto& r : setup.dev) EXPECT_EQ(CorrectSentence(r.source, res, Lm(), 4), r.source);
  EXPECT_TRUE(CorrectSentence({}, res, Lm(), 4).empty());
}

TEST(CorrectSentencesTest, FailureCarriesSentenceIndex) {
  const auto& setup = SmallSetup();
  const std::vector<Words> sources = {{"john", "sees", "a", "bird", "."}, {"<eps>"}, {"<sigma>"}};
  try {
    CorrectSentences(sources, setup.res, Lm(), 4, 2);
    FAIL();
  } catch (const SentenceError& e) {
    EXPECT_EQ(e.index(), 1u);
    EXPECT_EQ(std::string(e.what()).rfind("sentence 2: ", 0), 0u);
    EXPECT_THROW(std::rethrow_if_nested(e), InputError);
  }
}

TEST(CorrectSentencesTest, SkippingErrorsKeepsFailuresUnchanged) {
  const auto& setup = SmallSetup();
  const std::vector<Words> sources = {
      {"<eps>"}, {"john", "sees", "a", "bird", "."}, {"<sigma>", "x"}, {}};
  std::vector<SentenceFailure> failures;
  const auto out = CorrectSentencesSkippingErrors(sources, setup.res, Lm(), 4, 2, failures);
  ASSERT_EQ(out.size(), sources.size());
  ASSERT_EQ(failures.size(), 2u);
  EXPECT_EQ(failures[0].index, 0u);
  EXPECT_EQ(failures[1].index, 2u);
  EXPECT_EQ(out[0], sources[0]);
  EXPECT_EQ(out[2], sources[2]);
  EXPECT_EQ(out[1], CorrectSentence(sources[1], setup.res, Lm(), 4));
  EXPECT_TRUE(out[3].empty());
}

TEST(PowellTuneTest, IdentityOptimalDevReachesOne) {
  const auto& setup = SmallSetup();
  std::vector<M2Record> dev;
  for (std::size_t i = 0; i < 20; ++i) {
    M2Record r;
    r.source = setup.train[i];
    r.annotators[0] = {};
    dev.push_back(r);
  }
  const TuneResult result = PowellTune(dev, setup.res, Lm(), {0.0, 0.0, 0.0}, FastOptions());
  EXPECT_DOUBLE_EQ(result.best_f, 1.0);
  EXPECT_EQ(result.report.fp, 0u);
  EXPECT_GT(result.best.lambda_del + result.best.lambda_sub + result.best.lambda_ins, 0.0);
}

TEST(PowellTuneTest, BestSoFarNonDecreasingAndBeatsInit) {
  const auto& setup = SmallSetup();
  const PenaltyVector init{0.0, 0.0, 0.0};
  int calls = 0;
  double last = -1.0;
  const TuneResult result = PowellTune(setup.dev, setup.res, Lm(), init, FastOptions(),
                                       [&](int cycle, double best_f, const PenaltyVector&) {
                                         EXPECT_EQ(cycle, ++calls);
                                         EXPECT_GE(best_f, last);
                                         last = best_f;
                                       });
  ASSERT_FALSE(result.best_so_far.empty());
  EXPECT_EQ(result.best_so_far.size(), result.evaluations);
  for (std::size_t i = 1; i < result.best_so_far.size(); ++i) {
    EXPECT_GE(result.best_so_far[i], result.best_so_far[i - 1]);
  }
  for (std::size_t i = 1; i < result.cycle_best.size(); ++i) {
    EXPECT_GE(result.cycle_best[i], result.cycle_best[i - 1]);
  }
  EXPECT_EQ(calls, static_cast<int>(result.cycle_best.size()));
  const double init_f = EvaluatePenalties(setup.dev, setup.res, Lm(), init, 4).f_half;
  EXPECT_GE(result.best_f, init_f);
  EXPECT_EQ(result.best_so_far.front(), init_f);
  // The reported score is reproducible from the returned penalties.
  EXPECT_DOUBLE_EQ(EvaluatePenalties(setup.dev, setup.res, Lm(), result.best, 4).f_half,
                   result.best_f);
}

TEST(PowellTuneTest, RejectsBadArguments) {
  const auto& setup = SmallSetup();
  EXPECT_THROW(PowellTune({}, setup.res, Lm(), {}), InputError);
  EXPECT_THROW(PowellTune(setup.dev, setup.res, Lm(), {-1.0, 0.0, 0.0}), InputError);
  TunerOptions bad;
  bad.lambda_max = 0.0;
  EXPECT_THROW(PowellTune(setup.dev, setup.res, Lm(), {}, bad), ConfigError);
  bad = {};
  bad.beam = 0;
  EXPECT_THROW(PowellTune(setup.dev, setup.res, Lm(), {}, bad), InputError);
}

}  // namespace
}  // namespace fstgec
