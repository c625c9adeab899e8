#include "fstgec/confusion.hpp"

#include <algorithm>
#include <map>

#include "fstgec/bpe.hpp"
#include "fstgec/error.hpp"
#include "fstgec/text_util.hpp"

namespace fstgec {

DeletionList DefaultDeletionList() {
  return DeletionList({"the", ",", "a", "to", "it", "of", "in", "that", "will", "have", "for",
                       "an", "is", "-", "they", "'s", "and", "had"});
}

InsertionList DefaultInsertionList() { return InsertionList({",", "-", "'s"}); }

namespace {

std::vector<std::string> FirstColumn(const std::filesystem::path& path) {
  std::vector<std::string> tokens;
  for (const auto& line : ReadLines(path)) {
    auto token = Trim(SplitTabs(line).front());
    if (!token.empty()) tokens.emplace_back(token);
  }
  return tokens;
}

}  // namespace

DeletionList LoadDeletionList(const std::filesystem::path& path) {
  return DeletionList(FirstColumn(path));
}

InsertionList LoadInsertionList(const std::filesystem::path& path) {
  return InsertionList(FirstColumn(path));
}

void ConfusionCatalog::Add(std::string_view word, std::string_view candidate,
                           CandidateSource source) {
  if (word.empty() || candidate.empty() || word == candidate) return;
  auto it = entries_.find(word);
  if (it == entries_.end()) it = entries_.emplace(std::string(word), std::vector<Candidate>{}).first;
  auto& cands = it->second;
  auto c = std::find_if(cands.begin(), cands.end(),
                        [&](const Candidate& x) { return x.word == candidate; });
  if (c == cands.end()) {
    cands.push_back(Candidate{std::string(candidate), static_cast<std::uint8_t>(source)});
  } else {
    c->sources |= static_cast<std::uint8_t>(source);
  }
}

void ConfusionCatalog::AddAll(const ConfusionCatalog& other) {
  for (const auto& [word, cands] : other.entries_) {
    for (const auto& c : cands) {
      for (std::uint8_t bit = 1; bit != 0 && bit <= 8; bit <<= 1) {
        if (c.sources & bit) Add(word, c.word, static_cast<CandidateSource>(bit));
      }
    }
  }
}

std::span<const Candidate> ConfusionCatalog::Candidates(std::string_view word) const {
  auto it = entries_.find(word);
  if (it == entries_.end()) return {};
  return it->second;
}

std::vector<std::string> ConfusionCatalog::CandidateWords(std::string_view word) const {
  std::vector<std::string> out;
  for (const auto& c : Candidates(word)) out.push_back(c.word);
  return out;
}

ConfusionCatalog ParseConfusionTsv(const std::vector<std::string>& lines,
                                   CandidateSource source) {
  ConfusionCatalog catalog;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (Trim(lines[i]).empty()) continue;
    auto fields = SplitTabs(lines[i]);
    if (fields.size() < 2) throw ParseError("expected word<TAB>candidate...", i + 1);
    const auto word = Trim(fields[0]);
    if (word.empty()) throw ParseError("empty source word", i + 1);
    for (std::size_t k = 1; k < fields.size(); ++k) {
      catalog.Add(word, Trim(fields[k]), source);
    }
  }
  return catalog;
}

ConfusionCatalog LoadConfusionTsv(const std::filesystem::path& path, CandidateSource source) {
  return ParseConfusionTsv(ReadLines(path), source);
}

Lexicon::Lexicon(std::vector<std::string> words) : words_(std::move(words)) {
  std::erase_if(words_, [](const std::string& w) { return w.empty(); });
  std::sort(words_.begin(), words_.end());
  words_.erase(std::unique(words_.begin(), words_.end()), words_.end());
}

bool Lexicon::Contains(std::string_view word) const {
  return std::binary_search(words_.begin(), words_.end(), word, std::less<>{});
}

Lexicon LoadLexicon(const std::filesystem::path& path) {
  std::vector<std::string> words;
  for (const auto& line : ReadLines(path)) {
    auto w = Trim(line);
    if (!w.empty()) words.emplace_back(w);
  }
  return Lexicon(std::move(words));
}

std::size_t DamerauLevenshtein(std::string_view a_text, std::string_view b_text) {
  const auto a = SplitCodePoints(a_text);
  const auto b = SplitCodePoints(b_text);
  const std::size_t n = a.size(), m = b.size();
  const std::size_t inf = n + m;
  std::vector<std::vector<std::size_t>> h(n + 2, std::vector<std::size_t>(m + 2, 0));
  h[0][0] = inf;
  for (std::size_t i = 0; i <= n; ++i) {
    h[i + 1][0] = inf;
    h[i + 1][1] = i;
  }
  for (std::size_t j = 0; j <= m; ++j) {
    h[0][j + 1] = inf;
    h[1][j + 1] = j;
  }
  // Last row (1-based) in which each symbol of `a` was seen.
  std::map<std::string_view, std::size_t> last_row;
  for (std::size_t i = 1; i <= n; ++i) {
    std::size_t last_match_col = 0;
    for (std::size_t j = 1; j <= m; ++j) {
      auto it = last_row.find(b[j - 1]);
      const std::size_t k = it == last_row.end() ? 0 : it->second;
      const std::size_t l = last_match_col;
      const std::size_t cost = a[i - 1] == b[j - 1] ? 0 : 1;
      if (cost == 0) last_match_col = j;
      h[i + 1][j + 1] = std::min({h[i][j] + cost, h[i + 1][j] + 1, h[i][j + 1] + 1,
                                  h[k][l] + (i - k - 1) + 1 + (j - l - 1)});
    }
    last_row[a[i - 1]] = i;
  }
  return h[n + 1][m + 1];
}

std::vector<std::string> GenerateSpellCandidates(std::string_view word, const Lexicon& lexicon,
                                                 std::size_t max_distance) {
  if (max_distance < 1 || max_distance > 2) {
    throw InputError("spell candidate distance must be 1 or 2");
  }
  const auto len = SplitCodePoints(word).size();
  std::vector<std::pair<std::size_t, std::string>> hits;
  for (const auto& w : lexicon.Words()) {
    if (w == word) continue;
    // Length alone bounds the distance from below; cheap byte-length filter
    // first, exact code-point check after.
    const std::size_t bytes = w.size();
    if (bytes + 4 * max_distance < word.size() || word.size() + 4 * max_distance < bytes) continue;
    const auto wlen = SplitCodePoints(w).size();
    if ((wlen > len ? wlen - len : len - wlen) > max_distance) continue;
    const std::size_t d = DamerauLevenshtein(word, w);
    if (d <= max_distance) hits.emplace_back(d, w);
  }
  std::sort(hits.begin(), hits.end());
  std::vector<std::string> out;
  out.reserve(hits.size());
  for (auto& [d, w] : hits) out.push_back(std::move(w));
  return out;
}

ConfusionCatalog ExtractDevSubstitutions(const std::vector<M2Record>& records,
                                         std::size_t min_count) {
  if (min_count < 1) throw InputError("min_count must be at least 1");
  std::map<std::pair<std::string, std::string>, std::size_t> counts;
  for (const auto& r : records) {
    for (const auto& [id, edits] : r.annotators) {
      for (const auto& e : edits) {
        if (e.end - e.start == 1 && e.replacement.size() == 1) {
          ++counts[{r.source[e.start], e.replacement.front()}];
        }
      }
    }
  }
  ConfusionCatalog catalog;
  for (const auto& [pair, n] : counts) {
    if (n >= min_count) catalog.Add(pair.first, pair.second, CandidateSource::kDev);
  }
  return catalog;
}

DeletionList ExtractDevDeletions(const std::vector<M2Record>& records, std::size_t min_count) {
  if (min_count < 1) throw InputError("min_count must be at least 1");
  std::map<std::string, std::size_t> counts;
  for (const auto& r : records) {
    for (const auto& [id, edits] : r.annotators) {
      for (const auto& e : edits) {
        if (e.end - e.start == 1 && e.replacement.empty()) ++counts[r.source[e.start]];
      }
    }
  }
  std::vector<std::pair<std::string, std::size_t>> kept;
  for (const auto& [token, n] : counts) {
    if (n >= min_count) kept.emplace_back(token, n);
  }
  std::stable_sort(kept.begin(), kept.end(),
                   [](const auto& x, const auto& y) { return x.second > y.second; });
  std::vector<std::string> tokens;
  for (auto& [t, n] : kept) tokens.push_back(std::move(t));
  return DeletionList(std::move(tokens));
}

ConfusionCatalog MergeCatalogs(std::span<const ConfusionCatalog> parts) {
  ConfusionCatalog merged;
  for (const auto& p : parts) merged.AddAll(p);
  return merged;
}

}  // namespace fstgec
