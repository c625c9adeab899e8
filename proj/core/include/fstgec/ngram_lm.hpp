#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <memory>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace fstgec {

inline constexpr std::string_view kSentenceBegin = "<s>";
inline constexpr std::string_view kSentenceEnd = "</s>";
inline constexpr std::string_view kUnknownWord = "<unk>";

// Scorer context. Its meaning is private to the scorer that produced it;
// equal states must give identical future scores.
struct LmState {
  std::vector<std::int32_t> context;

  bool operator==(const LmState&) const = default;
  auto operator<=>(const LmState&) const = default;
};

struct LmStateHash {
  std::size_t operator()(const LmState& s) const;
};

// Sentence scorer consumed by the decoder. Costs are negative natural-log
// probabilities.
class LanguageModel {
 public:
  virtual ~LanguageModel() = default;

  virtual LmState Start() const = 0;
  virtual std::pair<double, LmState> Score(const LmState& state, std::string_view token) const = 0;

  double EndCost(const LmState& state) const { return Score(state, kSentenceEnd).first; }
  double SentenceCost(const std::vector<std::string>& tokens) const;
};

// Backoff n-gram model (order 2..5) with interpolated modified Kneser-Ney
// estimates. Probabilities are kept in ARPA form: base-10 log-probabilities
// for seen n-grams and backoff weights for contexts.
class NgramLm final : public LanguageModel {
 public:
  LmState Start() const override;
  std::pair<double, LmState> Score(const LmState& state, std::string_view token) const override;

  int Order() const { return order_; }
  std::size_t NumNgrams(int order) const;

  // Tokens that can be predicted: the vocabulary without <s>.
  std::vector<std::string> PredictableVocabulary() const;
  // Every stored n-gram of order < Order(); each is a conditioning context.
  std::vector<std::vector<std::string>> Contexts() const;
  // P(token | context) with full backoff, context given oldest first.
  double Probability(const std::vector<std::string>& context, std::string_view token) const;

  void WriteArpa(std::ostream& out) const;
  static NgramLm ReadArpa(std::istream& in);
  static NgramLm LoadArpa(const std::filesystem::path& path);
  void SaveArpa(const std::filesystem::path& path) const;

  friend NgramLm TrainNgramLm(const std::vector<std::vector<std::string>>& corpus, int order);

 private:
  struct Key {
    std::uint64_t lo = 0;
    std::uint64_t hi = 0;
    bool operator==(const Key&) const = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const {
      return static_cast<std::size_t>(k.lo * 0x9E3779B97F4A7C15ULL ^ (k.hi + (k.lo >> 31)));
    }
  };
  struct Entry {
    double log10_prob = 0.0;
    double log10_backoff = 0.0;
  };

  static Key MakeKey(const std::int32_t* ids, std::size_t n);
  std::int32_t WordId(std::string_view token) const;
  const Entry* Find(const std::int32_t* ids, std::size_t n) const;
  double Log10Prob(const std::vector<std::int32_t>& context, std::int32_t word) const;
  std::int32_t AddWord(std::string_view word);
  void SetEntry(const std::vector<std::int32_t>& ngram, Entry e);

  int order_ = 0;
  std::vector<std::string> words_;
  std::unordered_map<std::string, std::int32_t> ids_;
  std::unordered_map<Key, Entry, KeyHash> table_;
  // Stored n-grams per order, in insertion order, for serialization.
  std::vector<std::vector<std::vector<std::int32_t>>> ngrams_;
  std::int32_t unk_ = -1;
};

// Throws InputError when order is outside [2, 5] or the corpus holds fewer
// tokens than the order.
NgramLm TrainNgramLm(const std::vector<std::vector<std::string>>& corpus, int order);

// Uniform log-linear combination: the cost is the mean of member costs.
class LmEnsemble {
 public:
  LmEnsemble() = default;
  explicit LmEnsemble(std::vector<std::shared_ptr<const LanguageModel>> members);

  std::size_t Size() const { return members_.size(); }
  const std::vector<std::shared_ptr<const LanguageModel>>& Members() const { return members_; }

  std::vector<LmState> Start() const;
  std::pair<double, std::vector<LmState>> Score(const std::vector<LmState>& states,
                                                std::string_view token) const;
  double EndCost(const std::vector<LmState>& states) const;

 private:
  std::vector<std::shared_ptr<const LanguageModel>> members_;
};

}  // namespace fstgec
