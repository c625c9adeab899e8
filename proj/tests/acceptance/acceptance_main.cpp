// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero when any criterion fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fstgec/cascade.hpp"
#include "fstgec/datapipe.hpp"
#include "fstgec/decoder.hpp"
#include "fstgec/error.hpp"
#include "fstgec/fst_algorithms.hpp"
#include "fstgec/m2.hpp"
#include "fstgec/scoring.hpp"
#include "fstgec/text_util.hpp"
#include "fstgec/tuner.hpp"
#include "oracles.hpp"
#include "synthetic.hpp"

namespace fstgec {
namespace {

using testing::Tokens;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::string detail;
};

double Seconds(Clock::time_point since) {
  return std::chrono::duration<double>(Clock::now() - since).count();
}

std::string Fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

Outcome FstOptimizationEquivalence() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(2024);
  testing::RandomFstOptions options;
  options.max_states = 6;
  options.alphabet = 4;
  int failures = 0, pushed = 0;
  for (int trial = 0; trial < 200; ++trial) {
    auto syms = std::make_shared<SymbolTable>();
    const WeightedFst f = testing::RandomAcyclicFst(rng, options, syms);
    const auto truth = testing::OutputWeights(f);
    const WeightedFst no_eps = RmEpsilon(f);
    const WeightedFst det = Determinize(no_eps);
    const WeightedFst min = Minimize(det);
    bool ok = testing::SameWeights(testing::OutputWeights(no_eps), truth) &&
              testing::SameWeights(testing::OutputWeights(det), truth) &&
              testing::SameWeights(testing::OutputWeights(min), truth) &&
              testing::SameWeights(testing::OutputWeights(Connect(f)), truth);
    if (truth.empty()) {
      try {
        PushWeights(f);
        ok = false;
      } catch (const StructuralError&) {
      }
    } else {
      ++pushed;
      ok = ok && testing::SameWeights(testing::OutputWeights(PushWeights(f)), truth);
    }
    if (!ok) ++failures;
  }
  const double secs = Seconds(t0);
  return {failures == 0 && secs < 10.0,
          Fmt("200 FSTs (%d with a final state), %d mismatches, %.2fs (limit 10s)", pushed,
              failures, secs)};
}

struct CascadeCase {
  testing::CascadeInstance inst;
  WeightedFst hspace;
};

std::vector<CascadeCase>& CascadeCases() {
  static std::vector<CascadeCase> cases;
  return cases;
}

Outcome CascadeOracle() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(77);
  int failures = 0;
  double max_diff = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    auto inst = testing::RandomCascadeInstance(rng, 8);
    WeightedFst h = BuildHypothesisSpace(inst.sentence, inst.res);
    const auto got = testing::OutputWeights(h);
    const auto truth = testing::BruteForceHypothesisSpace(inst.sentence, inst.res);
    bool same_keys = got.size() == truth.size();
    for (const auto& [s, w] : truth) {
      auto it = got.find(s);
      if (it == got.end()) {
        same_keys = false;
        continue;
      }
      max_diff = std::max(max_diff, std::abs(it->second - w));
    }
    if (!same_keys || !testing::SameWeights(got, truth, 0.0)) ++failures;
    CascadeCases().push_back({std::move(inst), std::move(h)});
  }
  const double secs = Seconds(t0);
  return {failures == 0 && secs < 30.0,
          Fmt("50 sentences, %d mismatches, max weight difference %.3g, %.2fs (limit 30s)",
              failures, max_diff, secs)};
}

Outcome CascadeInvariants() {
  int insertion_violations = 0, identity_violations = 0;
  std::size_t strings = 0;
  for (const auto& c : CascadeCases()) {
    const auto& res = c.inst.res;
    const ConfusionCatalog catalog = SentenceCatalog(c.inst.sentence, res);
    const auto outputs = testing::OutputWeights(c.hspace);
    for (const auto& [pieces, w] : outputs) {
      ++strings;
      if (!testing::AtMostOneInsertion(DecodeBpe(pieces), c.inst.sentence, catalog,
                                       res.deletions, res.insertions)) {
        ++insertion_violations;
      }
    }
    const auto identity = outputs.find(res.bpe->ApplySentence(c.inst.sentence));
    if (identity == outputs.end() || identity->second != 0.0) ++identity_violations;
  }
  return {insertion_violations == 0 && identity_violations == 0 && !CascadeCases().empty(),
          Fmt("%zu instances, %zu strings; %d multi-insertion strings, %d missing/non-zero "
              "identities",
              CascadeCases().size(), strings, insertion_violations, identity_violations)};
}

Outcome DecoderExactness() {
  std::mt19937_64 rng(5150);
  // LM training text: sentences of further random instances in the same
  // vocabulary.
  std::vector<Tokens> pool;
  for (int i = 0; i < 40; ++i) pool.push_back(testing::RandomCascadeInstance(rng, 8).sentence);

  int exact_failures = 0, monotone_failures = 0;
  std::string first_sweep;
  double max_diff = 0.0;
  std::size_t max_joint = 0;
  for (const auto& c : CascadeCases()) {
    std::vector<Tokens> corpus;
    for (const auto& s : pool) corpus.push_back(c.inst.res.bpe->ApplySentence(s));
    const LmEnsemble lm({std::make_shared<NgramLm>(TrainNgramLm(corpus, 2)),
                         std::make_shared<NgramLm>(TrainNgramLm(corpus, 3))});
    const DecodeResult exact = ExactDecode(c.hspace, lm);
    const auto brute = testing::BruteForceDecode(c.hspace, lm);
    const DecodeResult wide = BeamDecode(c.hspace, lm, exact.joint_states);
    max_joint = std::max(max_joint, exact.joint_states);
    const double d = std::max(std::abs(exact.cost - brute.cost), std::abs(wide.cost - exact.cost));
    max_diff = std::max(max_diff, d);
    if (d > 1e-6 || wide.output != exact.output) ++exact_failures;

    double previous = std::numeric_limits<double>::infinity();
    bool monotone = true;
    std::string sweep;
    for (std::size_t beam : {1, 2, 4, 8, 16, 32}) {
      const double cost = BeamDecode(c.hspace, lm, beam).cost;
      monotone = monotone && cost <= previous + 1e-9;
      previous = cost;
      sweep += Fmt(" %zu:%.3f", beam, cost);
    }
    if (!monotone) {
      if (monotone_failures == 0) first_sweep = sweep;
      ++monotone_failures;
    }
  }
  return {exact_failures == 0 && monotone_failures == 0 && !CascadeCases().empty(),
          Fmt("%zu instances (max %zu joint states); %d exactness mismatches (max diff %.3g); "
              "%d non-monotone beam sweeps%s%s",
              CascadeCases().size(), max_joint, exact_failures, max_diff, monotone_failures,
              first_sweep.empty() ? "" : ", first (beam:cost)", first_sweep.c_str())};
}

Outcome MetricArithmetic() {
  const auto t0 = Clock::now();
  const double f = FBeta(0.4237, 0.1992, 0.5);
  bool ok = std::abs(f - 0.3458) <= 1e-4;
  std::ifstream in(FSTGEC_FIXTURE_DIR "/reported_scores.tsv");
  std::string line;
  int rows = 0, bad = 0;
  double worst = 0.0;
  while (std::getline(in, line)) {
    if (line.empty() || line.front() == '#') continue;
    const auto fields = SplitTabs(line);
    double p = 0, r = 0, reported = 0;
    if (fields.size() != 6 || !ParseDouble(fields[3], p) || !ParseDouble(fields[4], r) ||
        !ParseDouble(fields[5], reported)) {
      ++bad;
      continue;
    }
    ++rows;
    // Values are percentages rounded to two decimals.
    const double diff = std::abs(100.0 * FBeta(p / 100.0, r / 100.0, 0.5) - reported);
    worst = std::max(worst, diff);
    if (diff > 0.01) ++bad;
  }
  ok = ok && rows > 0 && bad == 0;
  const double secs = Seconds(t0);
  return {ok && secs < 1.0,
          Fmt("F0.5(0.4237, 0.1992) = %.4f; %d reported triples, %d inconsistent, worst "
              "deviation %.4f points, %.3fs (limit 1s)",
              f, rows, bad, worst, secs)};
}

ParallelCorpus Pairs(std::size_t n, const std::string& tag, bool identity) {
  ParallelCorpus c;
  for (std::size_t i = 0; i < n; ++i) {
    const std::string s = tag + " " + std::to_string(i);
    c.push_back({s, identity ? s : s + " x", tag});
  }
  return c;
}

std::size_t CountTag(const ParallelCorpus& c, const std::string& tag) {
  return static_cast<std::size_t>(
      std::count_if(c.begin(), c.end(), [&](const SentencePair& p) { return p.tag == tag; }));
}

Outcome PipelineArithmetic() {
  // Corpus sizes in thousands of sentence pairs. Non-identity pairs per
  // corpus, then identity pairs (with-identity minus without).
  struct Part {
    std::string tag;
    std::size_t kept, identities;
  };
  const std::vector<Part> parts = {
      {"fce", 18, 10}, {"lang8", 498, 540}, {"nucle", 21, 36}, {"wi", 23, 11}};
  ParallelCorpus real;
  for (const auto& p : parts) {
    for (const auto& x : Pairs(p.kept, p.tag, false)) real.push_back(x);
    for (const auto& x : Pairs(p.identities, p.tag, true)) real.push_back(x);
  }
  std::vector<std::string> got;

  // In-domain over-sampling on the with-identity data.
  for (std::size_t rate : {1, 4, 8}) {
    const ParallelCorpus s = Oversample(real, "wi", rate);
    got.push_back(FormatRatio(CountTag(s, "wi"), s.size() - CountTag(s, "wi"), 0));
  }
  const std::vector<std::string> oversample_expected = {"1:33", "1:8", "1:4"};

  // Identity removal, 4x in-domain over-sampling, real-data repetition.
  AssembleConfig cfg;
  cfg.identity_tags = {"fce", "lang8", "nucle", "wi"};
  cfg.oversample_tag = "wi";
  cfg.oversample_rate = 4;
  struct Row {
    std::size_t real_rate, synth;
  };
  const std::vector<Row> rows = {{1, 1000}, {1, 3000}, {1, 5000}, {3, 3000}, {6, 5000}};
  for (const auto& row : rows) {
    cfg.real_rate = row.real_rate;
    const ParallelCorpus synth = Pairs(row.synth, "bt", true);
    const ParallelCorpus out = AssembleTrainingSet(real, synth, cfg);
    const std::size_t n_real = out.size() - CountTag(out, "bt");
    got.push_back(RealSynthRatio(n_real, CountTag(out, "bt")));
  }
  const std::vector<std::string> mix_expected = {"1:1.6", "1:4.8", "1:7.9", "1:1.6", "1:1.3"};

  std::vector<std::string> expected = oversample_expected;
  expected.insert(expected.end(), mix_expected.begin(), mix_expected.end());
  const std::size_t base = RemoveIdentities(real, cfg.identity_tags).size();
  return {got == expected && base == 560,
          "ratios " + Join(got, " ") + " (expected " + Join(expected, " ") + "); " +
              std::to_string(base) + "K pairs after identity removal"};
}

Outcome EndToEnd() {
  const auto t0 = Clock::now();
  const testing::DeskScaleSetup setup = testing::MakeDeskScaleSetup(1);
  const LmEnsemble lm({setup.lm});
  const PenaltyVector init{0.0, 0.0, 0.0};
  TunerOptions options;
  const TuneResult tuned = PowellTune(setup.dev, setup.res, lm, init, options);

  double grid_best = -1.0;
  PenaltyVector grid_point;
  for (int i = 0; i < 5; ++i) {
    for (int j = 0; j < 5; ++j) {
      for (int k = 0; k < 5; ++k) {
        const PenaltyVector p{5.0 * i, 5.0 * j, 5.0 * k};
        const double f = EvaluatePenalties(setup.dev, setup.res, lm, p, options.beam).f_half;
        if (f > grid_best) {
          grid_best = f;
          grid_point = p;
        }
      }
    }
  }

  std::vector<Tokens> sources;
  for (const auto& r : setup.test) sources.push_back(r.source);
  const double do_nothing = ScoreCorpus(sources, setup.test).f_half;
  const double test_init = EvaluatePenalties(setup.test, setup.res, lm, init, options.beam).f_half;
  const double test_tuned =
      EvaluatePenalties(setup.test, setup.res, lm, tuned.best, options.beam).f_half;
  const double secs = Seconds(t0);

  const bool ok = test_tuned > do_nothing && test_tuned - test_init >= 0.05 &&
                  tuned.best_f >= grid_best - 0.01 && secs < 300.0;
  return {ok, Fmt("test F0.5 tuned %.4f, untuned %.4f, do-nothing %.4f; dev F0.5 tuned %.4f at "
                  "(%.2f, %.2f, %.2f), grid %.4f at (%.0f, %.0f, %.0f); %.1fs (limit 300s)",
                  test_tuned, test_init, do_nothing, tuned.best_f, tuned.best.lambda_del,
                  tuned.best.lambda_sub, tuned.best.lambda_ins, grid_best, grid_point.lambda_del,
                  grid_point.lambda_sub, grid_point.lambda_ins, secs)};
}

Outcome BpeAndLmProperties() {
  std::mt19937_64 rng(99);
  const auto letters = SplitCodePoints("abcdefghijklmnopqrstuvwxyzéüß'-");
  auto random_word = [&] {
    std::string w;
    const std::size_t len = 1 + rng() % 10;
    for (std::size_t k = 0; k < len; ++k) w += letters[rng() % letters.size()];
    return w;
  };
  std::vector<std::string> lines;
  for (int i = 0; i < 500; ++i) lines.push_back(random_word() + " " + random_word());
  const BpeModel bpe = LearnBpe(CountWords(lines), 200);
  int bpe_failures = 0;
  for (int i = 0; i < 1000; ++i) {
    const std::string w = random_word();
    if (DecodeBpe(bpe.Apply(w)) != Tokens{w}) ++bpe_failures;
  }

  const auto corpus = testing::GrammarCorpus(rng, 2000);
  const NgramLm lm = TrainNgramLm(corpus, 3);
  const auto vocab = lm.PredictableVocabulary();
  double worst_norm = 0.0;
  std::size_t contexts = 0;
  for (const auto& ctx : lm.Contexts()) {
    double sum = 0.0;
    for (const auto& w : vocab) sum += lm.Probability(ctx, w);
    worst_norm = std::max(worst_norm, std::abs(sum - 1.0));
    ++contexts;
  }

  std::stringstream arpa;
  lm.WriteArpa(arpa);
  const NgramLm back = NgramLm::ReadArpa(arpa);
  double worst_arpa = 0.0;
  auto probes = testing::GrammarCorpus(rng, 200);
  probes.push_back({"unseen", "words", "here"});
  for (const auto& s : probes) {
    worst_arpa = std::max(worst_arpa, std::abs(back.SentenceCost(s) - lm.SentenceCost(s)));
  }
  return {bpe_failures == 0 && worst_norm <= 1e-6 && worst_arpa <= 1e-9,
          Fmt("%d/1000 BPE round-trip failures; %zu contexts, max |sum-1| %.2e; ARPA max score "
              "difference %.2e",
              bpe_failures, contexts, worst_norm, worst_arpa)};
}

Outcome ScorerRoundTrip() {
  std::mt19937_64 rng(31337);
  const Tokens vocab = {"a", "b", "c", "d", "the", ","};
  auto random_sentence = [&] {
    Tokens s(rng() % 9);
    for (auto& w : s) w = vocab[rng() % vocab.size()];
    return s;
  };
  int failures = 0;
  for (int i = 0; i < 1000; ++i) {
    const Tokens src = random_sentence();
    const Tokens hyp = random_sentence();
    if (ApplyEdits(src, ExtractEdits(src, hyp)) != hyp) ++failures;
  }
  const auto gold = ParseM2File(FSTGEC_FIXTURE_DIR "/five_sentences.m2");
  std::vector<Tokens> hyps;
  for (const auto& line : ReadLines(FSTGEC_FIXTURE_DIR "/five_sentences.hyp")) {
    hyps.push_back(SplitWhitespace(line));
  }
  const ScoreReport r = ScoreCorpus(hyps, gold);
  // Counted by hand: sentence 1 tp; sentence 2 one merged span, fp 1 fn 2;
  // sentence 3 fp; sentence 4 tp against the second annotator; sentence 5
  // tp and fp.
  const bool fixture_ok = gold.size() == 5 && r.tp == 3 && r.fp == 3 && r.fn == 2;
  return {failures == 0 && fixture_ok,
          Fmt("%d/1000 round-trip failures; fixture tp/fp/fn %zu/%zu/%zu (expected 3/3/2)",
              failures, r.tp, r.fp, r.fn)};
}

}  // namespace
}  // namespace fstgec

int main() {
  using fstgec::Outcome;
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"fst-optimization-equivalence", fstgec::FstOptimizationEquivalence},
      {"cascade-oracle", fstgec::CascadeOracle},
      {"cascade-invariants", fstgec::CascadeInvariants},
      {"decoder-exactness", fstgec::DecoderExactness},
      {"metric-arithmetic", fstgec::MetricArithmetic},
      {"pipeline-arithmetic", fstgec::PipelineArithmetic},
      {"end-to-end-correction", fstgec::EndToEnd},
      {"bpe-lm-properties", fstgec::BpeAndLmProperties},
      {"scorer-round-trip", fstgec::ScorerRoundTrip},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s %s: %s\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str());
    std::fflush(stdout);
    if (!o.pass) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
