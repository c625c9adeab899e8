#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fstgec/m2.hpp"
#include "fstgec/token_list.hpp"

namespace fstgec {

enum class CandidateSource : std::uint8_t {
  kSpell = 1 << 0,
  kMorph = 1 << 1,
  kManual = 1 << 2,
  kDev = 1 << 3,
};

struct Candidate {
  std::string word;
  std::uint8_t sources = 0;  // bitwise or of CandidateSource

  bool HasSource(CandidateSource s) const { return sources & static_cast<std::uint8_t>(s); }
};

// word -> ordered candidate corrections, each tagged with where it came
// from. A word never lists itself.
class ConfusionCatalog {
 public:
  // Self-candidates and empty strings are ignored.
  void Add(std::string_view word, std::string_view candidate, CandidateSource source);
  void AddAll(const ConfusionCatalog& other);

  std::span<const Candidate> Candidates(std::string_view word) const;
  std::vector<std::string> CandidateWords(std::string_view word) const;
  bool Contains(std::string_view word) const { return entries_.count(std::string(word)) > 0; }
  std::size_t Size() const { return entries_.size(); }
  const std::map<std::string, std::vector<Candidate>, std::less<>>& Entries() const {
    return entries_;
  }

 private:
  std::map<std::string, std::vector<Candidate>, std::less<>> entries_;
};

// Lines "word<TAB>cand1<TAB>cand2...". Repeated words merge. Throws
// ParseError (with line number) for a non-empty line without a tab.
ConfusionCatalog LoadConfusionTsv(const std::filesystem::path& path,
                                  CandidateSource source = CandidateSource::kManual);
ConfusionCatalog ParseConfusionTsv(const std::vector<std::string>& lines,
                                   CandidateSource source = CandidateSource::kManual);

class Lexicon {
 public:
  Lexicon() = default;
  explicit Lexicon(std::vector<std::string> words);

  bool Contains(std::string_view word) const;
  const std::vector<std::string>& Words() const { return words_; }
  bool Empty() const { return words_.empty(); }

 private:
  std::vector<std::string> words_;  // sorted, unique
};

// One word per line.
Lexicon LoadLexicon(const std::filesystem::path& path);

// Unrestricted Damerau-Levenshtein distance over code points.
std::size_t DamerauLevenshtein(std::string_view a, std::string_view b);

// Lexicon words within max_distance (1 or 2) of `word`, excluding the word
// itself, ordered by distance and then lexicographically.
std::vector<std::string> GenerateSpellCandidates(std::string_view word, const Lexicon& lexicon,
                                                 std::size_t max_distance);

// Single-token replacements seen at least min_count times across all
// annotators.
ConfusionCatalog ExtractDevSubstitutions(const std::vector<M2Record>& records,
                                         std::size_t min_count = 6);

// Single-token unnecessary-word edits seen at least min_count times,
// most frequent first (ties lexicographic).
DeletionList ExtractDevDeletions(const std::vector<M2Record>& records, std::size_t min_count = 6);

ConfusionCatalog MergeCatalogs(std::span<const ConfusionCatalog> parts);

}  // namespace fstgec
