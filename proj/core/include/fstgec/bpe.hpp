#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace fstgec {

inline constexpr std::string_view kEndOfWord = "</w>";
inline constexpr std::string_view kDefaultBpeSeparator = "@@";

// Ordered byte-pair merge rules. Non-final pieces of a segmented word carry
// the separator suffix ("situ@@ ation").
class BpeModel {
 public:
  using Merge = std::pair<std::string, std::string>;

  BpeModel() = default;
  explicit BpeModel(std::vector<Merge> merges,
                    std::string separator = std::string(kDefaultBpeSeparator));

  const std::vector<Merge>& Merges() const { return merges_; }
  const std::string& Separator() const { return separator_; }

  // Segmentation of one non-empty word. Thread-safe.
  std::vector<std::string> Apply(std::string_view word) const;
  std::vector<std::string> ApplySentence(const std::vector<std::string>& words) const;

  // Model restricted to the first k merges.
  BpeModel Prefix(std::size_t k) const;

 private:
  std::vector<Merge> merges_;
  std::string separator_ = std::string(kDefaultBpeSeparator);
  std::map<Merge, std::size_t> rank_;
};

using WordCounts = std::map<std::string, std::uint64_t>;

// Classic BPE learning with a separate end-of-word symbol. The most frequent
// adjacent pair wins; ties go to the lexicographically smallest pair.
// Learning stops early once no pair occurs at least twice.
BpeModel LearnBpe(const WordCounts& corpus, std::size_t num_merges);

WordCounts CountWords(const std::vector<std::string>& lines);

// Joins continuation pieces back into words. Throws FormatError when the
// sequence ends on a continuation piece.
std::vector<std::string> DecodeBpe(const std::vector<std::string>& tokens,
                                   std::string_view separator = kDefaultBpeSeparator);

// Merge file: one "left right" pair per line in application order.
BpeModel LoadBpeModel(const std::filesystem::path& path);
void SaveBpeModel(const std::filesystem::path& path, const BpeModel& model);

// Splits UTF-8 text into code points (invalid bytes stand alone).
std::vector<std::string> SplitCodePoints(std::string_view word);

}  // namespace fstgec
