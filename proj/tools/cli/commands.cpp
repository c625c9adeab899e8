#include "commands.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "fstgec/bpe.hpp"
#include "fstgec/datapipe.hpp"
#include "fstgec/error.hpp"
#include "fstgec/m2.hpp"
#include "fstgec/ngram_lm.hpp"
#include "fstgec/scoring.hpp"
#include "fstgec/text_util.hpp"
#include "fstgec/tuner.hpp"

namespace fstgec::cli {

namespace fs = std::filesystem;

namespace {

using Sentences = std::vector<std::vector<std::string>>;

// Raw option storage; converted into a RunConfig after parsing.
struct GlobalOptions {
  std::string lexicon, deletions, insertions, bpe;
  std::vector<std::string> confusions, lms;
  double lambda_del = 1.0, lambda_sub = 1.0, lambda_ins = 1.0;
  std::size_t beam = 8, spell_distance = 1, jobs = 1;
  std::uint64_t seed = 0;
  CLI::Option* seed_opt = nullptr;
  bool skip_errors = false;

  RunConfig ToConfig() const {
    RunConfig c;
    auto maybe = [](const std::string& s) -> std::optional<fs::path> {
      if (s.empty()) return std::nullopt;
      return fs::path(s);
    };
    c.lexicon = maybe(lexicon);
    c.deletions = maybe(deletions);
    c.insertions = maybe(insertions);
    c.bpe = maybe(bpe);
    c.confusions = confusions;
    for (const auto& lm : lms) c.lms.emplace_back(lm);
    c.penalties = {lambda_del, lambda_sub, lambda_ins};
    c.beam = beam;
    c.spell_distance = spell_distance;
    c.jobs = jobs;
    if (seed_opt && seed_opt->count() > 0) c.seed = seed;
    c.skip_errors = skip_errors;
    return c;
  }
};

std::vector<std::string> ReadInput(const std::string& path) {
  if (path != "-") return ReadLines(path);
  std::vector<std::string> lines;
  for (std::string line; std::getline(std::cin, line);) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
  }
  return lines;
}

Sentences Tokenize(const std::vector<std::string>& lines) {
  Sentences out;
  out.reserve(lines.size());
  for (const auto& line : lines) out.push_back(SplitWhitespace(line));
  return out;
}

ParallelCorpus LoadPairs(const std::vector<std::string>& tsvs,
                         const std::vector<std::string>& triples) {
  ParallelCorpus out;
  for (const auto& path : tsvs) {
    const ParallelCorpus part = LoadParallelTsv(path);
    out.insert(out.end(), part.begin(), part.end());
  }
  for (std::size_t i = 0; i + 2 < triples.size(); i += 3) {
    const ParallelCorpus part = LoadParallelFiles(triples[i], triples[i + 1], triples[i + 2]);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

std::string Quote(const std::string& s) { return "\"" + s + "\""; }

std::string QuotePath(const fs::path& p) { return Quote(fs::absolute(p).string()); }

}  // namespace

int ExitCodeFor(const std::exception& e) {
  if (const auto* se = dynamic_cast<const SentenceError*>(&e)) {
    try {
      std::rethrow_if_nested(*se);
    } catch (const std::exception& inner) {
      return ExitCodeFor(inner);
    } catch (...) {
      return kExitInternal;
    }
    return kExitInternal;
  }
  if (dynamic_cast<const IoError*>(&e)) return kExitIo;
  if (dynamic_cast<const InputError*>(&e) || dynamic_cast<const ParseError*>(&e) ||
      dynamic_cast<const ConfigError*>(&e) || dynamic_cast<const FormatError*>(&e)) {
    return kExitValidation;
  }
  return kExitInternal;
}

std::string FormatConfig(const RunConfig& config) {
  std::ostringstream os;
  if (config.lexicon) os << "lexicon = " << QuotePath(*config.lexicon) << "\n";
  if (!config.confusions.empty()) {
    os << "confusion = [";
    for (std::size_t i = 0; i < config.confusions.size(); ++i) {
      const auto [source, path] = ParseConfusionSpec(config.confusions[i]);
      std::string prefix;
      switch (source) {
        case CandidateSource::kSpell: prefix = "spell:"; break;
        case CandidateSource::kMorph: prefix = "morph:"; break;
        case CandidateSource::kManual: prefix = "manual:"; break;
        case CandidateSource::kDev: prefix = "dev:"; break;
      }
      os << (i ? ", " : "") << Quote(prefix + fs::absolute(path).string());
    }
    os << "]\n";
  }
  if (config.deletions) os << "deletions = " << QuotePath(*config.deletions) << "\n";
  if (config.insertions) os << "insertions = " << QuotePath(*config.insertions) << "\n";
  if (config.bpe) os << "bpe = " << QuotePath(*config.bpe) << "\n";
  if (!config.lms.empty()) {
    os << "lm = [";
    for (std::size_t i = 0; i < config.lms.size(); ++i) {
      os << (i ? ", " : "") << QuotePath(config.lms[i]);
    }
    os << "]\n";
  }
  os << "lambda-del = " << FormatDouble(config.penalties.lambda_del) << "\n"
     << "lambda-sub = " << FormatDouble(config.penalties.lambda_sub) << "\n"
     << "lambda-ins = " << FormatDouble(config.penalties.lambda_ins) << "\n"
     << "beam = " << config.beam << "\n"
     << "spell-distance = " << config.spell_distance << "\n"
     << "jobs = " << config.jobs << "\n";
  if (config.seed) os << "seed = " << *config.seed << "\n";
  if (config.skip_errors) os << "skip-errors = true\n";
  return os.str();
}

int RunCli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Grammatical error correction with weighted finite-state transducers", "fstgec"};
  app.set_config("--config", "", "Read options from a key = value file");
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions g;
  app.add_option("--lexicon", g.lexicon, "Word list for spelling candidates");
  app.add_option("--confusion", g.confusions,
                 "Confusion TSV, optionally prefixed with spell:, morph:, manual: or dev:");
  app.add_option("--deletions", g.deletions, "Deletion list (first column)");
  app.add_option("--insertions", g.insertions, "Insertion list (first column)");
  app.add_option("--bpe", g.bpe, "BPE merge file");
  app.add_option("--lm", g.lms, "ARPA language model; repeat for an ensemble");
  app.add_option("--lambda-del", g.lambda_del, "Deletion penalty")->capture_default_str();
  app.add_option("--lambda-sub", g.lambda_sub, "Substitution penalty")->capture_default_str();
  app.add_option("--lambda-ins", g.lambda_ins, "Insertion penalty")->capture_default_str();
  app.add_option("--beam", g.beam, "Beam size")->capture_default_str();
  app.add_option("--spell-distance", g.spell_distance, "Spelling edit distance (1 or 2)")
      ->capture_default_str();
  app.add_option("--jobs", g.jobs, "Decoding threads (0: all cores)")->capture_default_str();
  g.seed_opt = app.add_option("--seed", g.seed, "Shuffle seed");
  app.add_flag("--skip-errors", g.skip_errors,
               "Emit failing sentences unchanged instead of aborting");

  // learn-bpe
  auto* learn_bpe = app.add_subcommand("learn-bpe", "Learn BPE merges from a text corpus");
  std::string bpe_corpus, bpe_out;
  std::size_t num_merges = 0;
  learn_bpe->add_option("corpus", bpe_corpus, "Training text")->required();
  learn_bpe->add_option("--merges", num_merges, "Number of merge operations")->required();
  learn_bpe->add_option("-o,--output", bpe_out, "Merge file to write")->required();

  // train-lm
  auto* train_lm = app.add_subcommand("train-lm", "Train a Kneser-Ney n-gram model");
  std::string lm_corpus, lm_out;
  int order = 3;
  train_lm->add_option("corpus", lm_corpus, "Tokenized training text")->required();
  train_lm->add_option("--order", order, "Model order (2 to 5)")->capture_default_str();
  train_lm->add_option("-o,--output", lm_out, "ARPA file to write")->required();

  // correct
  auto* correct = app.add_subcommand("correct", "Correct pre-tokenized sentences");
  std::string correct_input;
  correct->add_option("input", correct_input, "One sentence per line ('-' for stdin)")
      ->required();

  // tune
  auto* tune = app.add_subcommand("tune", "Tune the penalty vector on an M2 dev set");
  std::string tune_dev, tune_config_out;
  TunerOptions topts;
  tune->add_option("dev", tune_dev, "Development set in M2 format")->required();
  tune->add_option("--lambda-max", topts.lambda_max, "Upper end of each line search")
      ->capture_default_str();
  tune->add_option("--max-cycles", topts.max_cycles, "Maximum coordinate cycles")
      ->capture_default_str();
  tune->add_option("--min-improvement", topts.min_improvement,
                   "Stop once a cycle gains less F0.5")
      ->capture_default_str();
  tune->add_option("--scan-points", topts.scan_points, "Grid points before refinement")
      ->capture_default_str();
  tune->add_option("--tolerance", topts.tolerance, "Golden-section bracket width")
      ->capture_default_str();
  tune->add_option("--write-config", tune_config_out,
                   "Write a config file holding the tuned penalties");

  // score
  auto* score = app.add_subcommand("score", "Score hypotheses against M2 annotations");
  std::string score_hyp, score_m2;
  double precision = 0.0, recall = 0.0;
  score->add_option("hyp", score_hyp, "Corrected sentences, one per line");
  score->add_option("m2", score_m2, "Gold annotations");
  auto* p_opt = score->add_option("--precision", precision, "Print F0.5 for a stored precision");
  auto* r_opt = score->add_option("--recall", recall, "Print F0.5 for a stored recall");
  p_opt->needs(r_opt);
  r_opt->needs(p_opt);

  // stats
  auto* stats = app.add_subcommand("stats", "Count edit types in an M2 file");
  std::string stats_m2;
  stats->add_option("m2", stats_m2, "Gold annotations")->required();

  // prep-data
  auto* prep = app.add_subcommand("prep-data", "Assemble a training corpus");
  std::vector<std::string> real_tsv, real_pairs, synth_tsv, synth_pairs, identity_tags;
  std::string oversample_tag, prep_out;
  std::size_t oversample_rate = 1, real_rate = 1;
  prep->add_option("--real", real_tsv, "Real pairs as source<TAB>target<TAB>tag");
  prep->add_option("--real-pair", real_pairs, "Real pairs as SOURCE TARGET TAG files")
      ->expected(3);
  prep->add_option("--synth", synth_tsv, "Synthetic pairs as source<TAB>target<TAB>tag");
  prep->add_option("--synth-pair", synth_pairs, "Synthetic pairs as SOURCE TARGET TAG files")
      ->expected(3);
  prep->add_option("--remove-identities", identity_tags,
                   "Drop identical real pairs with this tag");
  prep->add_option("--oversample-tag", oversample_tag, "Real tag to over-sample");
  prep->add_option("--oversample-rate", oversample_rate, "Total copies of the tagged pairs")
      ->capture_default_str();
  prep->add_option("--real-rate", real_rate, "Copies of the processed real part")
      ->capture_default_str();
  prep->add_option("-o,--output", prep_out, "TSV file to write")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::FileError& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    RunConfig config = g.ToConfig();
    config.Validate();

    if (learn_bpe->parsed()) {
      const BpeModel model = LearnBpe(CountWords(ReadLines(bpe_corpus)), num_merges);
      SaveBpeModel(bpe_out, model);
      out << "merges " << model.Merges().size() << "\n";
    } else if (train_lm->parsed()) {
      if (order < 2 || order > 5) throw ConfigError("--order must be in [2, 5]");
      Sentences corpus = Tokenize(ReadLines(lm_corpus));
      if (config.bpe) {
        const BpeModel model = LoadBpeModel(*config.bpe);
        for (auto& s : corpus) s = model.ApplySentence(s);
      }
      const NgramLm lm = TrainNgramLm(corpus, order);
      lm.SaveArpa(lm_out);
      for (int k = 1; k <= order; ++k) out << "ngram " << k << "=" << lm.NumNgrams(k) << "\n";
    } else if (correct->parsed()) {
      const CascadeResources res = LoadResources(config);
      const LmEnsemble lm = LoadEnsemble(config);
      const Sentences input = Tokenize(ReadInput(correct_input));
      Sentences output;
      if (config.skip_errors) {
        std::vector<SentenceFailure> failures;
        output = CorrectSentencesSkippingErrors(input, res, lm, config.beam, config.jobs, failures);
        for (const auto& f : failures) {
          err << "warning: sentence " << f.index + 1 << ": " << f.message
              << " (emitted unchanged)\n";
        }
      } else {
        output = CorrectSentences(input, res, lm, config.beam, config.jobs);
      }
      for (const auto& s : output) out << Join(s) << "\n";
    } else if (tune->parsed()) {
      const CascadeResources res = LoadResources(config);
      const LmEnsemble lm = LoadEnsemble(config);
      const std::vector<M2Record> dev = ParseM2File(tune_dev);
      topts.beam = config.beam;
      topts.jobs = config.jobs;
      const TuneResult result =
          PowellTune(dev, res, lm, config.penalties, topts,
                     [&](int cycle, double best_f, const PenaltyVector&) {
                       out << "cycle " << cycle << " f0.5 " << FormatDouble(best_f) << "\n";
                     });
      config.penalties = result.best;
      out << "lambda-del = " << FormatDouble(result.best.lambda_del) << "\n"
          << "lambda-sub = " << FormatDouble(result.best.lambda_sub) << "\n"
          << "lambda-ins = " << FormatDouble(result.best.lambda_ins) << "\n"
          << result.report.Line() << "\n";
      if (!tune_config_out.empty()) {
        std::ofstream file(tune_config_out);
        if (!file) throw IoError("cannot write " + tune_config_out);
        file << FormatConfig(config);
        if (!file) throw IoError("cannot write " + tune_config_out);
      }
    } else if (score->parsed()) {
      if (p_opt->count() > 0) {
        if (precision < 0 || precision > 1 || recall < 0 || recall > 1) {
          throw ConfigError("precision and recall must lie in [0, 1]");
        }
        out << FormatFixed(precision, 4) << " " << FormatFixed(recall, 4) << " "
            << FormatFixed(FBeta(precision, recall, 0.5), 4) << "\n";
      } else {
        if (score_hyp.empty() || score_m2.empty()) {
          throw ConfigError("score needs a hypothesis file and an M2 file");
        }
        const Sentences hyps = Tokenize(ReadLines(score_hyp));
        out << ScoreCorpus(hyps, ParseM2File(score_m2)).Line() << "\n";
      }
    } else if (stats->parsed()) {
      out << CountEditTypes(ParseM2File(stats_m2)).Format();
    } else if (prep->parsed()) {
      const ParallelCorpus real = LoadPairs(real_tsv, real_pairs);
      const ParallelCorpus synth = LoadPairs(synth_tsv, synth_pairs);
      AssembleConfig acfg;
      acfg.identity_tags = {identity_tags.begin(), identity_tags.end()};
      acfg.oversample_tag = oversample_tag;
      acfg.oversample_rate = oversample_rate;
      acfg.real_rate = real_rate;
      acfg.shuffle_seed = config.seed;
      const ParallelCorpus assembled = AssembleTrainingSet(real, synth, acfg);
      SaveParallelTsv(prep_out, assembled);
      const std::size_t n_real = assembled.size() - synth.size();
      out << "real " << n_real << " synthetic " << synth.size() << " ratio "
          << (n_real > 0 ? RealSynthRatio(n_real, synth.size()) : std::string("-")) << "\n";
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return ExitCodeFor(e);
  }
  return kExitOk;
}

}  // namespace fstgec::cli
