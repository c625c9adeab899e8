#pragma once

// Construction of the correction hypothesis space
//
//   I o D o E o A o T
//
// I is the input sentence, D deletes listed tokens, E substitutes confusion
// candidates, A inserts at most one listed token and T maps words to BPE
// pieces. Path weights are the accumulated edit penalties.

#include <memory>
#include <set>
#include <string>
#include <vector>

#include "fstgec/bpe.hpp"
#include "fstgec/confusion.hpp"
#include "fstgec/fst.hpp"
#include "fstgec/token_list.hpp"

namespace fstgec {

struct PenaltyVector {
  double lambda_del = 0.0;
  double lambda_sub = 0.0;
  double lambda_ins = 0.0;

  // Throws InputError unless every component is finite and >= 0.
  void Validate() const;
  bool operator==(const PenaltyVector&) const = default;
};

struct CascadeResources {
  DeletionList deletions = DefaultDeletionList();
  InsertionList insertions = DefaultInsertionList();
  std::shared_ptr<const ConfusionCatalog> confusions = std::make_shared<ConfusionCatalog>();
  std::shared_ptr<const BpeModel> bpe = std::make_shared<BpeModel>();
  PenaltyVector penalties;
  // Optional: out-of-lexicon sentence words get spell candidates at this
  // Damerau-Levenshtein distance on top of the catalog.
  std::shared_ptr<const Lexicon> lexicon;
  std::size_t spell_distance = 1;
};

WeightedFst BuildInputFst(const std::vector<std::string>& tokens, const SymbolTablePtr& syms);

// Single state: sigma:sigma/0 loop plus t:<eps>/lambda_del for each listed t.
WeightedFst BuildDeletionFst(const DeletionList& deletions, double lambda_del,
                             const SymbolTablePtr& syms);

// Single state: sigma:sigma/0 loop plus w:c/lambda_sub for every sentence
// word w and candidate c.
WeightedFst BuildEditFst(const ConfusionCatalog& confusions, double lambda_sub,
                         const std::set<std::string>& sentence_words, const SymbolTablePtr& syms);

// Two states, both final: sigma loops on each and <eps>:t/lambda_ins arcs
// from the first to the second, so a path inserts zero or one token.
WeightedFst BuildInsertionFst(const InsertionList& insertions, double lambda_ins,
                              const SymbolTablePtr& syms);

// Maps each word to its BPE pieces at weight 0, closed under concatenation.
WeightedFst BuildBpeMapFst(const std::set<std::string>& word_alphabet, const BpeModel& bpe,
                           const SymbolTablePtr& syms);

// Catalog used for one sentence: the resource catalog plus spell candidates
// for sentence words missing from the lexicon (when one is configured).
ConfusionCatalog SentenceCatalog(const std::vector<std::string>& tokens,
                                 const CascadeResources& res);

// Every word the cascade can emit for this sentence.
std::set<std::string> CascadeWordAlphabet(const std::vector<std::string>& tokens,
                                          const ConfusionCatalog& catalog,
                                          const InsertionList& insertions);

// I o D o E o A o T before projection and optimization. Uses a fresh symbol
// table shared by all component transducers.
WeightedFst BuildCascade(const std::vector<std::string>& tokens, const CascadeResources& res);

// Output projection, connect, epsilon removal, determinization,
// minimization and weight pushing.
WeightedFst OptimizeHypothesisSpace(const WeightedFst& cascade);

// Deterministic, epsilon-free, acyclic, pushed acceptor over BPE pieces.
WeightedFst BuildHypothesisSpace(const std::vector<std::string>& tokens,
                                 const CascadeResources& res);

}  // namespace fstgec
