#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "fstgec/m2.hpp"

namespace fstgec {

// (1 + b^2) p r / (b^2 p + r); 0 when the denominator is 0.
double FBeta(double precision, double recall, double beta);

struct ScoreReport {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
  double precision = 1.0;
  double recall = 1.0;
  double f_half = 1.0;

  // "TP FP FN P R F0.5" with four-decimal ratios.
  std::string Line() const;
};

// Precision and recall define 0/0 as 1.
ScoreReport MakeReport(std::size_t tp, std::size_t fp, std::size_t fn);

// Exact span matching of hypothesis edits against gold edits. With several
// annotators each sentence is scored against the annotator giving the best
// sentence-level F0.5 (ties: more tp, fewer fp, fewer fn, lower id).
// Throws InputError when the lengths differ.
ScoreReport ScoreCorpus(const std::vector<std::vector<std::string>>& hypotheses,
                        const std::vector<M2Record>& gold);

struct EditTypeStats {
  std::size_t sentences = 0;
  std::size_t words = 0;
  // Indexed by EditKind.
  std::array<std::size_t, 3> counts{};

  std::size_t Total() const { return counts[0] + counts[1] + counts[2]; }
  double PerSentence(std::size_t count) const;
  double PerWord(std::size_t count) const;
  // Rows Missing / Replacement / Unnecessary / Total, columns count,
  // per-sentence average and per-word percentage.
  std::string Format() const;
};

// Counts the first annotator's edits.
EditTypeStats CountEditTypes(const std::vector<M2Record>& gold);

}  // namespace fstgec
