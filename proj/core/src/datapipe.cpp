#include "fstgec/datapipe.hpp"

#include <algorithm>
#include <random>

#include "fstgec/error.hpp"
#include "fstgec/text_util.hpp"

namespace fstgec {

ParallelCorpus LoadParallelTsv(const std::filesystem::path& path) {
  ParallelCorpus corpus;
  const auto lines = ReadLines(path);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (Trim(lines[i]).empty()) continue;
    const auto fields = SplitTabs(lines[i]);
    if (fields.size() != 3) throw ParseError("expected source<TAB>target<TAB>tag", i + 1);
    for (auto f : fields) {
      if (Trim(f).empty()) throw ParseError("empty field", i + 1);
    }
    corpus.push_back({std::string(fields[0]), std::string(fields[1]), std::string(fields[2])});
  }
  return corpus;
}

void SaveParallelTsv(const std::filesystem::path& path, const ParallelCorpus& corpus) {
  std::vector<std::string> lines;
  lines.reserve(corpus.size());
  for (const auto& p : corpus) lines.push_back(p.source + '\t' + p.target + '\t' + p.tag);
  WriteLines(path, lines);
}

ParallelCorpus LoadParallelFiles(const std::filesystem::path& source,
                                 const std::filesystem::path& target, const std::string& tag) {
  if (tag.empty()) throw InputError("corpus tag must not be empty");
  const auto src = ReadLines(source);
  const auto tgt = ReadLines(target);
  if (src.size() != tgt.size()) {
    throw InputError(source.string() + " and " + target.string() + " differ in line count");
  }
  ParallelCorpus corpus;
  for (std::size_t i = 0; i < src.size(); ++i) {
    if (Trim(src[i]).empty() || Trim(tgt[i]).empty()) {
      throw ParseError("empty sentence in parallel files", i + 1);
    }
    corpus.push_back({src[i], tgt[i], tag});
  }
  return corpus;
}

std::string NormalizeWhitespace(std::string_view text) {
  return Join(SplitWhitespace(text), " ");
}

ParallelCorpus RemoveIdentities(const ParallelCorpus& corpus, const std::set<std::string>& tags) {
  ParallelCorpus out;
  out.reserve(corpus.size());
  for (const auto& p : corpus) {
    if (tags.contains(p.tag) && NormalizeWhitespace(p.source) == NormalizeWhitespace(p.target)) {
      continue;
    }
    out.push_back(p);
  }
  return out;
}

ParallelCorpus Oversample(const ParallelCorpus& corpus, std::string_view tag, std::size_t rate) {
  if (rate < 1) throw InputError("over-sampling rate must be at least 1");
  ParallelCorpus tagged;
  for (const auto& p : corpus) {
    if (p.tag == tag) tagged.push_back(p);
  }
  ParallelCorpus out = corpus;
  out.reserve(corpus.size() + tagged.size() * (rate - 1));
  for (std::size_t r = 1; r < rate; ++r) out.insert(out.end(), tagged.begin(), tagged.end());
  return out;
}

std::string FormatRatio(std::uint64_t a, std::uint64_t b, int decimals) {
  if (a == 0) throw InputError("ratio base must be positive");
  return "1:" + FormatFixed(static_cast<double>(b) / static_cast<double>(a), decimals);
}

std::string RealSynthRatio(std::uint64_t n_real, std::uint64_t n_synth) {
  return FormatRatio(n_real, n_synth, 1);
}

ParallelCorpus AssembleTrainingSet(const ParallelCorpus& real, const ParallelCorpus& synth,
                                   const AssembleConfig& config) {
  if (config.oversample_rate < 1 || config.real_rate < 1) {
    throw InputError("over-sampling rates must be at least 1");
  }
  if (config.oversample_rate > 1 && config.oversample_tag.empty()) {
    throw InputError("over-sampling needs a corpus tag");
  }
  ParallelCorpus part = RemoveIdentities(real, config.identity_tags);
  if (!config.oversample_tag.empty()) {
    part = Oversample(part, config.oversample_tag, config.oversample_rate);
  }
  ParallelCorpus out;
  out.reserve(part.size() * config.real_rate + synth.size());
  for (std::size_t r = 0; r < config.real_rate; ++r) out.insert(out.end(), part.begin(), part.end());
  out.insert(out.end(), synth.begin(), synth.end());
  if (config.shuffle_seed) {
    std::mt19937_64 rng(*config.shuffle_seed);
    std::shuffle(out.begin(), out.end(), rng);
  }
  return out;
}

}  // namespace fstgec
