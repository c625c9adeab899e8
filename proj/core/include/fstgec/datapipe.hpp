#pragma once

// Bookkeeping for mixing parallel training corpora: identity removal,
// over-sampling and real:synthetic ratios.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace fstgec {

struct SentencePair {
  std::string source;
  std::string target;
  std::string tag;

  bool operator==(const SentencePair&) const = default;
};

using ParallelCorpus = std::vector<SentencePair>;

// Lines "source<TAB>target<TAB>tag". Throws ParseError on a line with a
// missing or empty field.
ParallelCorpus LoadParallelTsv(const std::filesystem::path& path);
void SaveParallelTsv(const std::filesystem::path& path, const ParallelCorpus& corpus);

// Line-aligned source and target files; every pair gets `tag`.
ParallelCorpus LoadParallelFiles(const std::filesystem::path& source,
                                 const std::filesystem::path& target, const std::string& tag);

// Collapses whitespace runs to one space and trims the ends.
std::string NormalizeWhitespace(std::string_view text);

// Drops pairs tagged with one of `tags` whose normalized source equals the
// normalized target.
ParallelCorpus RemoveIdentities(const ParallelCorpus& corpus, const std::set<std::string>& tags);

// Appends rate - 1 copies of the pairs tagged `tag`, so they occur `rate`
// times in total. Throws InputError on rate < 1.
ParallelCorpus Oversample(const ParallelCorpus& corpus, std::string_view tag, std::size_t rate);

// "1:x" with x = b / a at the given number of decimals. Throws InputError
// when a is 0.
std::string FormatRatio(std::uint64_t a, std::uint64_t b, int decimals);
// FormatRatio(n_real, n_synth, 1).
std::string RealSynthRatio(std::uint64_t n_real, std::uint64_t n_synth);

struct AssembleConfig {
  std::set<std::string> identity_tags;
  std::string oversample_tag;
  std::size_t oversample_rate = 1;
  // Copies of the whole processed real part.
  std::size_t real_rate = 1;
  // Shuffle the result with this seed; deterministic concatenation when unset.
  std::optional<std::uint64_t> shuffle_seed;
};

// remove identities -> over-sample the tagged part -> repeat the real part
// real_rate times -> append the synthetic corpus as is.
ParallelCorpus AssembleTrainingSet(const ParallelCorpus& real, const ParallelCorpus& synth,
                                   const AssembleConfig& config);

}  // namespace fstgec
