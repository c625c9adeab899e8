#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace fstgec {

enum class EditKind { kMissing, kReplacement, kUnnecessary };

std::string_view EditKindName(EditKind kind);

// A token-span edit over a source sentence: source tokens [start, end) are
// replaced by `replacement`.
struct EditSpan {
  std::size_t start = 0;
  std::size_t end = 0;
  std::vector<std::string> replacement;

  EditKind Kind() const;
  bool operator==(const EditSpan&) const = default;
  auto operator<=>(const EditSpan&) const = default;
};

// Throws InputError when start > end or both the span and the replacement
// are empty.
EditSpan MakeEdit(std::size_t start, std::size_t end, std::vector<std::string> replacement);

struct M2Record {
  std::vector<std::string> source;
  // Annotator id -> edits. An annotator that marked the sentence as correct
  // has an empty edit list.
  std::map<int, std::vector<EditSpan>> annotators;

  // Edits of the lowest-numbered annotator, or none.
  const std::vector<EditSpan>& FirstAnnotator() const;
};

std::vector<M2Record> ParseM2(std::istream& in);
std::vector<M2Record> ParseM2File(const std::filesystem::path& path);

// Token-level Levenshtein alignment (unit costs). On equal cost the
// backtrace prefers match, then substitution, deletion, insertion. Adjacent
// non-match columns merge into one span. Spans come back sorted by start.
std::vector<EditSpan> ExtractEdits(const std::vector<std::string>& source,
                                   const std::vector<std::string>& hypothesis);

// Applies non-overlapping edits (sorted by start) to a source sentence.
std::vector<std::string> ApplyEdits(const std::vector<std::string>& source,
                                    const std::vector<EditSpan>& edits);

}  // namespace fstgec
