#include "fstgec/ngram_lm.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <numbers>
#include <ostream>

#include "fstgec/error.hpp"
#include "fstgec/text_util.hpp"

namespace fstgec {
namespace {

// log10 probability assigned to tokens the model cannot score at all
// (an unknown word under a model without <unk>), and to <s>.
constexpr double kLog10Floor = -99.0;
constexpr int kMaxOrder = 5;
constexpr int kIdBits = 21;

double Log10ToCost(double log10_prob) { return -log10_prob * std::numbers::ln10; }

}  // namespace

std::size_t LmStateHash::operator()(const LmState& s) const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (auto id : s.context) {
    h ^= static_cast<std::uint32_t>(id);
    h *= 0x100000001b3ULL;
  }
  return static_cast<std::size_t>(h);
}

double LanguageModel::SentenceCost(const std::vector<std::string>& tokens) const {
  LmState state = Start();
  double cost = 0.0;
  for (const auto& t : tokens) {
    auto [c, next] = Score(state, t);
    cost += c;
    state = std::move(next);
  }
  return cost + EndCost(state);
}

NgramLm::Key NgramLm::MakeKey(const std::int32_t* ids, std::size_t n) {
  // Three 21-bit slots per word; id + 1 so that an empty slot differs from
  // word 0.
  Key k;
  for (std::size_t i = 0; i < n; ++i) {
    const auto v = static_cast<std::uint64_t>(ids[i]) + 1;
    if (i < 3) {
      k.lo |= v << (kIdBits * i);
    } else {
      k.hi |= v << (kIdBits * (i - 3));
    }
  }
  return k;
}

std::int32_t NgramLm::AddWord(std::string_view word) {
  auto [it, inserted] = ids_.try_emplace(std::string(word), static_cast<std::int32_t>(words_.size()));
  if (inserted) {
    if (words_.size() >= (std::size_t{1} << kIdBits) - 2) throw ResourceError("vocabulary too large");
    words_.emplace_back(word);
  }
  return it->second;
}

std::int32_t NgramLm::WordId(std::string_view token) const {
  auto it = ids_.find(std::string(token));
  return it == ids_.end() ? unk_ : it->second;
}

const NgramLm::Entry* NgramLm::Find(const std::int32_t* ids, std::size_t n) const {
  auto it = table_.find(MakeKey(ids, n));
  return it == table_.end() ? nullptr : &it->second;
}

void NgramLm::SetEntry(const std::vector<std::int32_t>& ngram, Entry e) {
  auto [it, inserted] = table_.try_emplace(MakeKey(ngram.data(), ngram.size()), e);
  if (inserted) {
    if (ngrams_.size() < ngram.size() + 1) ngrams_.resize(ngram.size() + 1);
    ngrams_[ngram.size()].push_back(ngram);
  } else {
    it->second = e;
  }
}

double NgramLm::Log10Prob(const std::vector<std::int32_t>& context, std::int32_t word) const {
  if (word < 0) return kLog10Floor;
  std::array<std::int32_t, kMaxOrder> buf{};
  double backoff = 0.0;
  const std::size_t n = context.size();
  for (std::size_t start = 0; start <= n; ++start) {
    const std::size_t len = n - start;
    std::copy(context.begin() + static_cast<std::ptrdiff_t>(start), context.end(), buf.begin());
    buf[len] = word;
    if (const Entry* e = Find(buf.data(), len + 1)) return backoff + e->log10_prob;
    if (len > 0) {
      if (const Entry* c = Find(buf.data(), len)) backoff += c->log10_backoff;
    }
  }
  return backoff + kLog10Floor;
}

LmState NgramLm::Start() const {
  LmState s;
  s.context.push_back(WordId(kSentenceBegin));
  return s;
}

std::pair<double, LmState> NgramLm::Score(const LmState& state, std::string_view token) const {
  const std::int32_t w = WordId(token);
  const double cost = Log10ToCost(Log10Prob(state.context, w));
  LmState next;
  next.context.reserve(static_cast<std::size_t>(order_));
  const std::size_t keep = std::min(state.context.size(), static_cast<std::size_t>(order_ - 2));
  next.context.assign(state.context.end() - static_cast<std::ptrdiff_t>(keep), state.context.end());
  next.context.push_back(w);
  // Shorten to the longest suffix that is itself a stored n-gram; longer
  // contexts cannot change any later probability.
  std::size_t drop = 0;
  while (drop < next.context.size() &&
         (next.context[drop] < 0 ||
          !Find(next.context.data() + drop, next.context.size() - drop))) {
    ++drop;
  }
  next.context.erase(next.context.begin(), next.context.begin() + static_cast<std::ptrdiff_t>(drop));
  return {cost, std::move(next)};
}

std::size_t NgramLm::NumNgrams(int order) const {
  if (order < 1 || static_cast<std::size_t>(order) >= ngrams_.size()) return 0;
  return ngrams_[static_cast<std::size_t>(order)].size();
}

std::vector<std::string> NgramLm::PredictableVocabulary() const {
  std::vector<std::string> out;
  for (const auto& w : words_) {
    if (w != kSentenceBegin) out.push_back(w);
  }
  return out;
}

std::vector<std::vector<std::string>> NgramLm::Contexts() const {
  std::vector<std::vector<std::string>> out;
  for (int k = 1; k < order_; ++k) {
    if (static_cast<std::size_t>(k) >= ngrams_.size()) break;
    for (const auto& g : ngrams_[static_cast<std::size_t>(k)]) {
      std::vector<std::string> words;
      for (auto id : g) words.push_back(words_[static_cast<std::size_t>(id)]);
      out.push_back(std::move(words));
    }
  }
  return out;
}

double NgramLm::Probability(const std::vector<std::string>& context, std::string_view token) const {
  std::vector<std::int32_t> ids;
  for (const auto& c : context) ids.push_back(WordId(c));
  if (ids.size() > static_cast<std::size_t>(order_ - 1)) {
    ids.erase(ids.begin(), ids.end() - (order_ - 1));
  }
  return std::pow(10.0, Log10Prob(ids, WordId(token)));
}

NgramLm TrainNgramLm(const std::vector<std::vector<std::string>>& corpus, int order) {
  if (order < 2 || order > kMaxOrder) throw InputError("n-gram order must be in [2, 5]");
  std::size_t total = 0;
  for (const auto& s : corpus) total += s.size();
  if (total < static_cast<std::size_t>(order)) {
    throw InputError("training corpus has fewer tokens than the model order");
  }

  NgramLm lm;
  lm.order_ = order;
  lm.unk_ = lm.AddWord(kUnknownWord);
  const std::int32_t bos = lm.AddWord(kSentenceBegin);
  const std::int32_t eos = lm.AddWord(kSentenceEnd);

  using Ngram = std::vector<std::int32_t>;
  const auto n = static_cast<std::size_t>(order);
  std::vector<std::map<Ngram, std::uint64_t>> raw(n + 1);
  for (const auto& sentence : corpus) {
    Ngram seq{bos};
    for (const auto& t : sentence) {
      if (t == kSentenceBegin || t == kSentenceEnd) continue;
      seq.push_back(lm.AddWord(t));
    }
    seq.push_back(eos);
    for (std::size_t i = 1; i < seq.size(); ++i) {
      for (std::size_t k = 1; k <= n && k <= i + 1; ++k) {
        ++raw[k][Ngram(seq.begin() + static_cast<std::ptrdiff_t>(i + 1 - k),
                       seq.begin() + static_cast<std::ptrdiff_t>(i + 1))];
      }
    }
  }

  // Highest order keeps raw counts; lower orders use continuation counts,
  // except n-grams starting with <s>, which have no left context.
  std::vector<std::map<Ngram, std::uint64_t>> adjusted(n + 1);
  adjusted[n] = raw[n];
  for (std::size_t k = 1; k < n; ++k) {
    for (const auto& [g, c] : raw[k]) {
      if (g.front() == bos) adjusted[k][g] = c;
    }
    for (const auto& [g, c] : raw[k + 1]) {
      Ngram suffix(g.begin() + 1, g.end());
      if (suffix.front() != bos) ++adjusted[k][suffix];
    }
  }

  // Modified Kneser-Ney discounts per order from counts-of-counts.
  std::vector<std::array<double, 4>> discount(n + 1);
  for (std::size_t k = 1; k <= n; ++k) {
    std::array<double, 5> coc{};
    for (const auto& [g, c] : adjusted[k]) {
      if (c >= 1 && c <= 4) coc[c] += 1.0;
    }
    std::array<double, 4> d{0.0, 0.5, 1.0, 1.5};
    if (coc[1] > 0 && coc[2] > 0 && coc[3] > 0 && coc[4] > 0) {
      const double y = coc[1] / (coc[1] + 2.0 * coc[2]);
      const std::array<double, 4> est{0.0, 1.0 - 2.0 * y * coc[2] / coc[1],
                                      2.0 - 3.0 * y * coc[3] / coc[2],
                                      3.0 - 4.0 * y * coc[4] / coc[3]};
      bool ok = true;
      for (int i = 1; i <= 3; ++i) ok &= est[static_cast<std::size_t>(i)] > 0.0 && est[static_cast<std::size_t>(i)] <= i;
      if (ok) d = est;
    }
    discount[k] = d;
  }
  auto discount_for = [&](std::size_t k, std::uint64_t c) {
    return discount[k][std::min<std::uint64_t>(c, 3)];
  };

  struct ContextStats {
    double total = 0.0;
    double mass = 0.0;  // sum of discounts, numerator of the backoff weight
  };

  const double predictable = static_cast<double>(lm.words_.size() - 1);
  for (std::size_t k = 1; k <= n; ++k) {
    std::map<Ngram, ContextStats> stats;
    for (const auto& [g, c] : adjusted[k]) {
      auto& s = stats[Ngram(g.begin(), g.end() - 1)];
      s.total += static_cast<double>(c);
      s.mass += discount_for(k, c);
    }

    if (k == 1) {
      const ContextStats& s = stats[Ngram{}];
      const double gamma = s.mass / s.total;
      for (std::int32_t w = 0; w < static_cast<std::int32_t>(lm.words_.size()); ++w) {
        if (w == bos) {
          lm.SetEntry({w}, {kLog10Floor, 0.0});
          continue;
        }
        auto it = adjusted[1].find(Ngram{w});
        const std::uint64_t c = it == adjusted[1].end() ? 0 : it->second;
        const double seen = c ? (static_cast<double>(c) - discount_for(1, c)) / s.total : 0.0;
        lm.SetEntry({w}, {std::log10(seen + gamma / predictable), 0.0});
      }
      continue;
    }

    for (const auto& [g, c] : adjusted[k]) {
      const Ngram context(g.begin(), g.end() - 1);
      const ContextStats& s = stats.at(context);
      const double gamma = s.mass / s.total;
      const Ngram lower_context(context.begin() + 1, context.end());
      const double lower = std::pow(10.0, lm.Log10Prob(lower_context, g.back()));
      const double p = (static_cast<double>(c) - discount_for(k, c)) / s.total + gamma * lower;
      lm.SetEntry(g, {std::log10(p), 0.0});
    }
    for (const auto& [context, s] : stats) {
      auto key = NgramLm::MakeKey(context.data(), context.size());
      auto it = lm.table_.find(key);
      if (it == lm.table_.end()) throw InternalError("n-gram context missing from lower order");
      it->second.log10_backoff = std::log10(s.mass / s.total);
    }
  }
  return lm;
}

void NgramLm::WriteArpa(std::ostream& out) const {
  out << "\\data\\\n";
  for (int k = 1; k <= order_; ++k) out << "ngram " << k << "=" << NumNgrams(k) << "\n";
  for (int k = 1; k <= order_; ++k) {
    out << "\n\\" << k << "-grams:\n";
    if (static_cast<std::size_t>(k) >= ngrams_.size()) continue;
    for (const auto& g : ngrams_[static_cast<std::size_t>(k)]) {
      const Entry& e = table_.at(MakeKey(g.data(), g.size()));
      out << FormatDouble(e.log10_prob) << '\t';
      for (std::size_t i = 0; i < g.size(); ++i) {
        if (i) out << ' ';
        out << words_[static_cast<std::size_t>(g[i])];
      }
      if (k < order_) out << '\t' << FormatDouble(e.log10_backoff);
      out << '\n';
    }
  }
  out << "\n\\end\\\n";
}

NgramLm NgramLm::ReadArpa(std::istream& in) {
  NgramLm lm;
  std::map<int, std::size_t> declared;
  int section = -1;  // -1 before \data\, 0 inside \data\, k inside k-grams
  bool ended = false;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string_view t = Trim(line);
    if (t.empty()) continue;
    if (t == "\\data\\") {
      section = 0;
      continue;
    }
    if (t == "\\end\\") {
      ended = true;
      break;
    }
    if (section == -1) continue;  // free text before the header
    if (t.front() == '\\') {
      int k = 0;
      if (std::sscanf(std::string(t).c_str(), "\\%d-grams:", &k) != 1 || k < 1 || k > kMaxOrder) {
        throw ParseError("bad section header", lineno);
      }
      section = k;
      continue;
    }
    if (section == 0) {
      int k = 0;
      unsigned long long count = 0;
      if (std::sscanf(std::string(t).c_str(), "ngram %d=%llu", &k, &count) != 2 || k < 1 ||
          k > kMaxOrder) {
        throw ParseError("bad ngram count line", lineno);
      }
      declared[k] = count;
      lm.order_ = std::max(lm.order_, k);
      continue;
    }
    auto fields = SplitWhitespace(t);
    const auto k = static_cast<std::size_t>(section);
    if (fields.size() != k + 1 && fields.size() != k + 2) {
      throw ParseError("expected logprob, " + std::to_string(k) + " words, optional backoff", lineno);
    }
    Entry e;
    if (!ParseDouble(fields[0], e.log10_prob)) throw ParseError("bad log probability", lineno);
    if (fields.size() == k + 2 && !ParseDouble(fields[k + 1], e.log10_backoff)) {
      throw ParseError("bad backoff weight", lineno);
    }
    std::vector<std::int32_t> g;
    for (std::size_t i = 1; i <= k; ++i) g.push_back(lm.AddWord(fields[i]));
    lm.SetEntry(g, e);
  }
  if (!ended) throw ParseError("missing \\end\\ marker");
  if (lm.order_ < 1) throw ParseError("ARPA file declares no n-grams");
  for (auto [k, count] : declared) {
    if (lm.NumNgrams(k) != count) {
      throw ParseError("declared " + std::to_string(count) + " " + std::to_string(k) +
                       "-grams but found " + std::to_string(lm.NumNgrams(k)));
    }
  }
  auto unk = lm.ids_.find(std::string(kUnknownWord));
  lm.unk_ = unk == lm.ids_.end() ? -1 : unk->second;
  lm.AddWord(kSentenceBegin);
  return lm;
}

NgramLm NgramLm::LoadArpa(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  return ReadArpa(in);
}

void NgramLm::SaveArpa(const std::filesystem::path& path) const {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  WriteArpa(out);
  if (!out) throw IoError("write failure on " + path.string());
}

LmEnsemble::LmEnsemble(std::vector<std::shared_ptr<const LanguageModel>> members)
    : members_(std::move(members)) {
  if (members_.empty()) throw InputError("an LM ensemble needs at least one member");
  for (const auto& m : members_) {
    if (!m) throw InputError("null LM ensemble member");
  }
}

std::vector<LmState> LmEnsemble::Start() const {
  std::vector<LmState> states;
  states.reserve(members_.size());
  for (const auto& m : members_) states.push_back(m->Start());
  return states;
}

std::pair<double, std::vector<LmState>> LmEnsemble::Score(const std::vector<LmState>& states,
                                                          std::string_view token) const {
  std::vector<LmState> next;
  next.reserve(members_.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < members_.size(); ++i) {
    auto [c, s] = members_[i]->Score(states[i], token);
    sum += c;
    next.push_back(std::move(s));
  }
  return {sum / static_cast<double>(members_.size()), std::move(next)};
}

double LmEnsemble::EndCost(const std::vector<LmState>& states) const {
  double sum = 0.0;
  for (std::size_t i = 0; i < members_.size(); ++i) sum += members_[i]->EndCost(states[i]);
  return sum / static_cast<double>(members_.size());
}

}  // namespace fstgec
