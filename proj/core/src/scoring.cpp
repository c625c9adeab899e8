#include "fstgec/scoring.hpp"

#include <algorithm>
#include <cstdio>
#include <optional>
#include <set>
#include <sstream>
#include <tuple>

#include "fstgec/error.hpp"
#include "fstgec/text_util.hpp"

namespace fstgec {

double FBeta(double precision, double recall, double beta) {
  const double b2 = beta * beta;
  const double denom = b2 * precision + recall;
  if (denom == 0.0) return 0.0;
  return (1.0 + b2) * precision * recall / denom;
}

std::string ScoreReport::Line() const {
  std::ostringstream out;
  out << tp << ' ' << fp << ' ' << fn << ' ' << FormatFixed(precision, 4) << ' '
      << FormatFixed(recall, 4) << ' ' << FormatFixed(f_half, 4);
  return out.str();
}

ScoreReport MakeReport(std::size_t tp, std::size_t fp, std::size_t fn) {
  ScoreReport r;
  r.tp = tp;
  r.fp = fp;
  r.fn = fn;
  r.precision = tp + fp == 0 ? 1.0 : static_cast<double>(tp) / static_cast<double>(tp + fp);
  r.recall = tp + fn == 0 ? 1.0 : static_cast<double>(tp) / static_cast<double>(tp + fn);
  r.f_half = FBeta(r.precision, r.recall, 0.5);
  return r;
}

namespace {

struct Counts {
  std::size_t tp = 0, fp = 0, fn = 0;
};

Counts Match(const std::vector<EditSpan>& hyp, const std::vector<EditSpan>& gold) {
  const std::set<EditSpan> gold_set(gold.begin(), gold.end());
  const std::set<EditSpan> hyp_set(hyp.begin(), hyp.end());
  Counts c;
  for (const auto& e : hyp_set) {
    if (gold_set.contains(e)) {
      ++c.tp;
    } else {
      ++c.fp;
    }
  }
  c.fn = gold_set.size() - c.tp;
  return c;
}

}  // namespace

ScoreReport ScoreCorpus(const std::vector<std::vector<std::string>>& hypotheses,
                        const std::vector<M2Record>& gold) {
  if (hypotheses.size() != gold.size()) {
    throw InputError("hypothesis count " + std::to_string(hypotheses.size()) +
                     " does not match reference count " + std::to_string(gold.size()));
  }
  Counts total;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    const auto edits = ExtractEdits(gold[i].source, hypotheses[i]);
    if (gold[i].annotators.empty()) {
      total.fp += edits.size();
      continue;
    }
    std::optional<Counts> best;
    double best_f = -1.0;
    for (const auto& [id, gold_edits] : gold[i].annotators) {
      const Counts c = Match(edits, gold_edits);
      const double f = MakeReport(c.tp, c.fp, c.fn).f_half;
      // Annotators are visited in ascending id, so strict comparisons keep
      // the lowest id on a full tie.
      const bool better =
          !best || f > best_f ||
          (f == best_f && std::make_tuple(c.tp, best->fp, best->fn) >
                              std::make_tuple(best->tp, c.fp, c.fn));
      if (better) {
        best = c;
        best_f = f;
      }
    }
    total.tp += best->tp;
    total.fp += best->fp;
    total.fn += best->fn;
  }
  return MakeReport(total.tp, total.fp, total.fn);
}

double EditTypeStats::PerSentence(std::size_t count) const {
  return sentences == 0 ? 0.0 : static_cast<double>(count) / static_cast<double>(sentences);
}

double EditTypeStats::PerWord(std::size_t count) const {
  return words == 0 ? 0.0 : static_cast<double>(count) / static_cast<double>(words);
}

std::string EditTypeStats::Format() const {
  std::ostringstream out;
  char buf[128];
  std::snprintf(buf, sizeof buf, "%-12s %8s %12s %9s\n", "Type", "Count", "PerSentence", "PerWord");
  out << buf;
  auto row = [&](std::string_view name, std::size_t count) {
    std::snprintf(buf, sizeof buf, "%-12.*s %8zu %12.2f %8.2f%%\n", static_cast<int>(name.size()),
                  name.data(), count, PerSentence(count), 100.0 * PerWord(count));
    out << buf;
  };
  for (auto kind : {EditKind::kMissing, EditKind::kReplacement, EditKind::kUnnecessary}) {
    row(EditKindName(kind), counts[static_cast<std::size_t>(kind)]);
  }
  row("Total", Total());
  return out.str();
}

EditTypeStats CountEditTypes(const std::vector<M2Record>& gold) {
  EditTypeStats stats;
  for (const auto& r : gold) {
    ++stats.sentences;
    stats.words += r.source.size();
    for (const auto& e : r.FirstAnnotator()) ++stats.counts[static_cast<std::size_t>(e.Kind())];
  }
  return stats;
}

}  // namespace fstgec
