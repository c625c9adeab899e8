#pragma once

// A toy English-like grammar and an error planter for end-to-end runs.

#include <memory>
#include <random>
#include <string>
#include <vector>

#include "fstgec/cascade.hpp"
#include "fstgec/m2.hpp"
#include "fstgec/ngram_lm.hpp"

namespace fstgec::testing {

std::vector<std::string> GrammarSentence(std::mt19937_64& rng);
std::vector<std::vector<std::string>> GrammarCorpus(std::mt19937_64& rng, std::size_t n);

// Verb agreement and misspelling confusions, both directions, so the catalog
// offers wrong substitutions as well as fixes.
std::shared_ptr<ConfusionCatalog> GrammarConfusions();

// Corrupts a clean sentence with zero to two planted errors drawn from the
// confusion catalog, the deletion inventory (spurious tokens) and the
// insertion inventory (dropped tokens). The gold edits turn the corrupted
// source back into the clean sentence.
M2Record PlantErrors(std::mt19937_64& rng, const std::vector<std::string>& clean,
                     const ConfusionCatalog& errors_from, const DeletionList& deletions,
                     const InsertionList& insertions);

struct DeskScaleSetup {
  std::vector<std::vector<std::string>> train;
  std::vector<M2Record> dev;
  std::vector<M2Record> test;
  CascadeResources res;
  // Trigram model over the BPE-segmented training corpus.
  std::shared_ptr<NgramLm> lm;
};

// Clean training corpus, error-planted dev and test sets, a learned BPE
// model, the grammar's confusion catalog and a trigram LM.
DeskScaleSetup MakeDeskScaleSetup(std::uint64_t seed, std::size_t n_train = 5000,
                                  std::size_t n_dev = 200, std::size_t n_test = 200,
                                  std::size_t bpe_merges = 500);

}  // namespace fstgec::testing
