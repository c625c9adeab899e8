#include "fstgec/bpe.hpp"

#include <fstream>
#include <limits>
#include <set>

#include "fstgec/error.hpp"
#include "fstgec/text_util.hpp"

namespace fstgec {

std::vector<std::string> SplitCodePoints(std::string_view word) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < word.size()) {
    const auto lead = static_cast<unsigned char>(word[i]);
    std::size_t len = 1;
    if ((lead & 0xE0) == 0xC0) len = 2;
    else if ((lead & 0xF0) == 0xE0) len = 3;
    else if ((lead & 0xF8) == 0xF0) len = 4;
    if (i + len > word.size()) len = 1;
    for (std::size_t k = 1; k < len; ++k) {
      if ((static_cast<unsigned char>(word[i + k]) & 0xC0) != 0x80) {
        len = 1;
        break;
      }
    }
    out.emplace_back(word.substr(i, len));
    i += len;
  }
  return out;
}

BpeModel::BpeModel(std::vector<Merge> merges, std::string separator)
    : merges_(std::move(merges)), separator_(std::move(separator)) {
  for (std::size_t i = 0; i < merges_.size(); ++i) {
    if (!rank_.emplace(merges_[i], i).second) {
      throw InputError("duplicate BPE merge: " + merges_[i].first + " " + merges_[i].second);
    }
  }
}

std::vector<std::string> BpeModel::Apply(std::string_view word) const {
  if (word.empty()) throw InputError("cannot segment an empty word");
  std::vector<std::string> symbols = SplitCodePoints(word);
  symbols.emplace_back(kEndOfWord);

  while (symbols.size() > 1) {
    std::size_t best_rank = std::numeric_limits<std::size_t>::max();
    for (std::size_t i = 0; i + 1 < symbols.size(); ++i) {
      auto it = rank_.find(Merge{symbols[i], symbols[i + 1]});
      if (it != rank_.end() && it->second < best_rank) best_rank = it->second;
    }
    if (best_rank == std::numeric_limits<std::size_t>::max()) break;
    const Merge& m = merges_[best_rank];
    std::vector<std::string> merged;
    merged.reserve(symbols.size());
    for (std::size_t i = 0; i < symbols.size(); ++i) {
      if (i + 1 < symbols.size() && symbols[i] == m.first && symbols[i + 1] == m.second) {
        merged.push_back(symbols[i] + symbols[i + 1]);
        ++i;
      } else {
        merged.push_back(std::move(symbols[i]));
      }
    }
    symbols.swap(merged);
  }

  if (symbols.back() == kEndOfWord) {
    symbols.pop_back();
  } else {
    auto& last = symbols.back();
    last.erase(last.size() - kEndOfWord.size());
  }
  for (std::size_t i = 0; i + 1 < symbols.size(); ++i) symbols[i] += separator_;
  return symbols;
}

std::vector<std::string> BpeModel::ApplySentence(const std::vector<std::string>& words) const {
  std::vector<std::string> out;
  for (const auto& w : words) {
    auto pieces = Apply(w);
    out.insert(out.end(), std::make_move_iterator(pieces.begin()),
               std::make_move_iterator(pieces.end()));
  }
  return out;
}

BpeModel BpeModel::Prefix(std::size_t k) const {
  k = std::min(k, merges_.size());
  return BpeModel(std::vector<Merge>(merges_.begin(), merges_.begin() + static_cast<std::ptrdiff_t>(k)),
                  separator_);
}

BpeModel LearnBpe(const WordCounts& corpus, std::size_t num_merges) {
  struct Entry {
    std::vector<std::string> symbols;
    std::uint64_t count;
  };
  std::vector<Entry> vocab;
  vocab.reserve(corpus.size());
  for (const auto& [word, count] : corpus) {
    if (word.empty() || count == 0) continue;
    Entry e{SplitCodePoints(word), count};
    e.symbols.emplace_back(kEndOfWord);
    vocab.push_back(std::move(e));
  }

  std::vector<BpeModel::Merge> merges;
  for (std::size_t step = 0; step < num_merges; ++step) {
    std::map<BpeModel::Merge, std::uint64_t> pairs;
    for (const auto& e : vocab) {
      for (std::size_t i = 0; i + 1 < e.symbols.size(); ++i) {
        pairs[{e.symbols[i], e.symbols[i + 1]}] += e.count;
      }
    }
    // std::map iterates in lexicographic order, so the first maximum wins ties.
    const BpeModel::Merge* best = nullptr;
    std::uint64_t best_count = 0;
    for (const auto& [pair, count] : pairs) {
      if (count > best_count) {
        best = &pair;
        best_count = count;
      }
    }
    if (!best || best_count < 2) break;
    const BpeModel::Merge chosen = *best;
    for (auto& e : vocab) {
      std::vector<std::string> merged;
      merged.reserve(e.symbols.size());
      for (std::size_t i = 0; i < e.symbols.size(); ++i) {
        if (i + 1 < e.symbols.size() && e.symbols[i] == chosen.first &&
            e.symbols[i + 1] == chosen.second) {
          merged.push_back(e.symbols[i] + e.symbols[i + 1]);
          ++i;
        } else {
          merged.push_back(std::move(e.symbols[i]));
        }
      }
      e.symbols.swap(merged);
    }
    merges.push_back(chosen);
  }
  return BpeModel(std::move(merges));
}

WordCounts CountWords(const std::vector<std::string>& lines) {
  WordCounts counts;
  for (const auto& line : lines) {
    for (auto& w : SplitWhitespace(line)) ++counts[std::move(w)];
  }
  return counts;
}

std::vector<std::string> DecodeBpe(const std::vector<std::string>& tokens,
                                   std::string_view separator) {
  std::vector<std::string> words;
  std::string pending;
  bool open = false;
  for (const auto& t : tokens) {
    const bool continues = !separator.empty() && t.size() >= separator.size() &&
                           t.compare(t.size() - separator.size(), separator.size(), separator) == 0;
    if (continues) {
      pending.append(t, 0, t.size() - separator.size());
      open = true;
    } else {
      pending += t;
      words.push_back(std::move(pending));
      pending.clear();
      open = false;
    }
  }
  if (open) throw FormatError("dangling BPE continuation marker at end of sequence");
  return words;
}

BpeModel LoadBpeModel(const std::filesystem::path& path) {
  const auto lines = ReadLines(path);
  std::vector<BpeModel::Merge> merges;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (i == 0 && lines[i].rfind("#version", 0) == 0) continue;
    auto fields = SplitWhitespace(lines[i]);
    if (fields.empty()) continue;
    if (fields.size() != 2) throw ParseError("expected 'left right'", i + 1);
    merges.emplace_back(std::move(fields[0]), std::move(fields[1]));
  }
  try {
    return BpeModel(std::move(merges));
  } catch (const InputError& e) {
    throw ParseError(e.what());
  }
}

void SaveBpeModel(const std::filesystem::path& path, const BpeModel& model) {
  std::vector<std::string> lines;
  lines.reserve(model.Merges().size());
  for (const auto& [l, r] : model.Merges()) lines.push_back(l + " " + r);
  WriteLines(path, lines);
}

}  // namespace fstgec
