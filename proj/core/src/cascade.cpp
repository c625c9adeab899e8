#include "fstgec/cascade.hpp"

#include <cmath>

#include "fstgec/error.hpp"
#include "fstgec/fst_algorithms.hpp"

namespace fstgec {

void PenaltyVector::Validate() const {
  for (double v : {lambda_del, lambda_sub, lambda_ins}) {
    if (!std::isfinite(v) || v < 0.0) throw InputError("penalties must be finite and >= 0");
  }
}

namespace {

void CheckPenalty(double lambda) {
  if (!std::isfinite(lambda) || lambda < 0.0) throw InputError("penalty must be finite and >= 0");
}

}  // namespace

WeightedFst BuildInputFst(const std::vector<std::string>& tokens, const SymbolTablePtr& syms) {
  if (tokens.empty()) throw InputError("cannot build an input FST for an empty sentence");
  WeightedFst fst(syms);
  fst.ReserveStates(tokens.size() + 1);
  StateId prev = fst.AddState();
  fst.SetStart(prev);
  for (const auto& t : tokens) {
    const Label l = syms->AddSymbol(t);
    const StateId next = fst.AddState();
    fst.AddArc(prev, Arc{l, l, Weight::One(), next});
    prev = next;
  }
  fst.SetFinal(prev, Weight::One());
  return fst;
}

WeightedFst BuildDeletionFst(const DeletionList& deletions, double lambda_del,
                             const SymbolTablePtr& syms) {
  CheckPenalty(lambda_del);
  WeightedFst fst(syms);
  const StateId s = fst.AddState();
  fst.SetStart(s);
  fst.SetFinal(s, Weight::One());
  fst.AddArc(s, Arc{kSigma, kSigma, Weight::One(), s});
  for (const auto& t : deletions.Tokens()) {
    fst.AddArc(s, Arc{syms->AddSymbol(t), kEpsilon, Weight(lambda_del), s});
  }
  return fst;
}

WeightedFst BuildEditFst(const ConfusionCatalog& confusions, double lambda_sub,
                         const std::set<std::string>& sentence_words, const SymbolTablePtr& syms) {
  CheckPenalty(lambda_sub);
  WeightedFst fst(syms);
  const StateId s = fst.AddState();
  fst.SetStart(s);
  fst.SetFinal(s, Weight::One());
  fst.AddArc(s, Arc{kSigma, kSigma, Weight::One(), s});
  for (const auto& w : sentence_words) {
    for (const auto& c : confusions.Candidates(w)) {
      fst.AddArc(s, Arc{syms->AddSymbol(w), syms->AddSymbol(c.word), Weight(lambda_sub), s});
    }
  }
  return fst;
}

WeightedFst BuildInsertionFst(const InsertionList& insertions, double lambda_ins,
                              const SymbolTablePtr& syms) {
  CheckPenalty(lambda_ins);
  WeightedFst fst(syms);
  const StateId before = fst.AddState();
  const StateId after = fst.AddState();
  fst.SetStart(before);
  fst.SetFinal(before, Weight::One());
  fst.SetFinal(after, Weight::One());
  fst.AddArc(before, Arc{kSigma, kSigma, Weight::One(), before});
  fst.AddArc(after, Arc{kSigma, kSigma, Weight::One(), after});
  for (const auto& t : insertions.Tokens()) {
    fst.AddArc(before, Arc{kEpsilon, syms->AddSymbol(t), Weight(lambda_ins), after});
  }
  return fst;
}

WeightedFst BuildBpeMapFst(const std::set<std::string>& word_alphabet, const BpeModel& bpe,
                           const SymbolTablePtr& syms) {
  WeightedFst fst(syms);
  const StateId start = fst.AddState();
  fst.SetStart(start);
  fst.SetFinal(start, Weight::One());
  for (const auto& w : word_alphabet) {
    const auto pieces = bpe.Apply(w);
    if (pieces.empty()) throw InternalError("empty BPE segmentation for '" + w + "'");
    const Label in = syms->AddSymbol(w);
    StateId prev = start;
    for (std::size_t i = 0; i < pieces.size(); ++i) {
      const bool last = i + 1 == pieces.size();
      const StateId next = last ? start : fst.AddState();
      fst.AddArc(prev, Arc{i == 0 ? in : kEpsilon, syms->AddSymbol(pieces[i]), Weight::One(), next});
      prev = next;
    }
  }
  return fst;
}

ConfusionCatalog SentenceCatalog(const std::vector<std::string>& tokens,
                                 const CascadeResources& res) {
  ConfusionCatalog catalog;
  for (const auto& w : tokens) {
    for (const auto& c : res.confusions->Candidates(w)) {
      for (std::uint8_t bit = 1; bit <= 8; bit <<= 1) {
        if (c.sources & bit) catalog.Add(w, c.word, static_cast<CandidateSource>(bit));
      }
    }
    if (res.lexicon && !res.lexicon->Empty() && !res.lexicon->Contains(w)) {
      for (const auto& c : GenerateSpellCandidates(w, *res.lexicon, res.spell_distance)) {
        catalog.Add(w, c, CandidateSource::kSpell);
      }
    }
  }
  return catalog;
}

std::set<std::string> CascadeWordAlphabet(const std::vector<std::string>& tokens,
                                          const ConfusionCatalog& catalog,
                                          const InsertionList& insertions) {
  std::set<std::string> words(tokens.begin(), tokens.end());
  for (const auto& w : tokens) {
    for (const auto& c : catalog.Candidates(w)) words.insert(c.word);
  }
  words.insert(insertions.Tokens().begin(), insertions.Tokens().end());
  return words;
}

WeightedFst BuildCascade(const std::vector<std::string>& tokens, const CascadeResources& res) {
  res.penalties.Validate();
  if (!res.confusions || !res.bpe) throw ConfigError("cascade resources are incomplete");
  auto syms = std::make_shared<SymbolTable>();
  const ConfusionCatalog catalog = SentenceCatalog(tokens, res);
  const std::set<std::string> sentence_words(tokens.begin(), tokens.end());

  WeightedFst input = BuildInputFst(tokens, syms);
  WeightedFst deletion = BuildDeletionFst(res.deletions, res.penalties.lambda_del, syms);
  WeightedFst edit = BuildEditFst(catalog, res.penalties.lambda_sub, sentence_words, syms);
  WeightedFst insertion = BuildInsertionFst(res.insertions, res.penalties.lambda_ins, syms);
  WeightedFst bpe_map =
      BuildBpeMapFst(CascadeWordAlphabet(tokens, catalog, res.insertions), *res.bpe, syms);

  WeightedFst result = Compose(input, deletion);
  result = Compose(result, edit);
  result = Compose(result, insertion);
  return Compose(result, bpe_map);
}

WeightedFst OptimizeHypothesisSpace(const WeightedFst& cascade) {
  WeightedFst fst = ProjectOutput(cascade);
  fst = Connect(fst);
  fst = RmEpsilon(fst);
  fst = Determinize(fst);
  fst = Minimize(fst);
  return PushWeights(fst);
}

WeightedFst BuildHypothesisSpace(const std::vector<std::string>& tokens,
                                 const CascadeResources& res) {
  WeightedFst hspace = OptimizeHypothesisSpace(BuildCascade(tokens, res));
  const Weight identity = AcceptedWeight(hspace, res.bpe->ApplySentence(tokens));
  if (!ApproxEqual(identity, Weight::One())) {
    throw InternalError("hypothesis space lost the zero-cost identity path");
  }
  return hspace;
}

}  // namespace fstgec
