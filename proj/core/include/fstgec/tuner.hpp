#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "fstgec/cascade.hpp"
#include "fstgec/error.hpp"
#include "fstgec/m2.hpp"
#include "fstgec/ngram_lm.hpp"
#include "fstgec/scoring.hpp"

namespace fstgec {

// Raised when correcting one sentence of a batch fails. The original error
// is nested (std::rethrow_if_nested).
class SentenceError : public Error {
 public:
  SentenceError(std::size_t index, const std::string& what)
      : Error("sentence " + std::to_string(index + 1) + ": " + what), index_(index) {}
  // Zero-based position in the batch.
  std::size_t index() const { return index_; }

 private:
  std::size_t index_;
};

// Hypothesis space, beam search and BPE decoding for one tokenized sentence.
// An empty sentence comes back unchanged.
std::vector<std::string> CorrectSentence(const std::vector<std::string>& tokens,
                                         const CascadeResources& res, const LmEnsemble& lm,
                                         std::size_t beam);

// Corrects sentences on `jobs` threads (0: hardware concurrency); the output
// keeps input order. The first failure is rethrown as SentenceError.
std::vector<std::vector<std::string>> CorrectSentences(
    const std::vector<std::vector<std::string>>& sentences, const CascadeResources& res,
    const LmEnsemble& lm, std::size_t beam, std::size_t jobs = 1);

struct SentenceFailure {
  std::size_t index = 0;  // zero-based
  std::string message;
};

// Like CorrectSentences, but a failing sentence comes back unchanged and is
// listed in `failures` (ascending index).
std::vector<std::vector<std::string>> CorrectSentencesSkippingErrors(
    const std::vector<std::vector<std::string>>& sentences, const CascadeResources& res,
    const LmEnsemble& lm, std::size_t beam, std::size_t jobs,
    std::vector<SentenceFailure>& failures);

// Corrects every dev source under `penalties` and scores the result.
ScoreReport EvaluatePenalties(const std::vector<M2Record>& dev, CascadeResources res,
                              const LmEnsemble& lm, const PenaltyVector& penalties,
                              std::size_t beam, std::size_t jobs = 1);

struct TunerOptions {
  double lambda_max = 20.0;
  int max_cycles = 10;
  double min_improvement = 1e-4;
  // Evenly spaced points scanned over [0, lambda_max] before refinement.
  int scan_points = 5;
  // Golden-section refinement stops once the bracket is this narrow.
  double tolerance = 0.05;
  std::size_t beam = 8;
  std::size_t jobs = 1;
};

struct TuneResult {
  PenaltyVector best;
  double best_f = 0.0;
  ScoreReport report;
  // Best F0.5 after each completed cycle.
  std::vector<double> cycle_best;
  // Best F0.5 seen after each distinct evaluation.
  std::vector<double> best_so_far;
  std::size_t evaluations = 0;
};

using TuneProgress = std::function<void(int cycle, double best_f, const PenaltyVector& best)>;

// Cyclic coordinate search over (lambda_del, lambda_sub, lambda_ins)
// maximizing corpus F0.5. Each line search scans a coarse grid and then
// narrows around the best grid point by golden-section search. Stops when a
// cycle improves by less than min_improvement or after max_cycles, and
// returns the best point seen.
TuneResult PowellTune(const std::vector<M2Record>& dev, const CascadeResources& res,
                      const LmEnsemble& lm, const PenaltyVector& init,
                      const TunerOptions& options = {}, const TuneProgress& progress = {});

}  // namespace fstgec
