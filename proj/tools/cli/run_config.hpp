#pragma once
// Settings shared by the correction commands. Values come from the command
// line or from a key = value file (--config); command-line values win.
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "fstgec/cascade.hpp"
#include "fstgec/ngram_lm.hpp"

namespace fstgec::cli {

struct RunConfig {
  std::optional<std::filesystem::path> lexicon;
  // "[spell|morph|manual|dev:]path"; the source defaults to manual.
  std::vector<std::string> confusions;
  std::optional<std::filesystem::path> deletions;
  std::optional<std::filesystem::path> insertions;
  std::optional<std::filesystem::path> bpe;
  std::vector<std::filesystem::path> lms;
  PenaltyVector penalties{1.0, 1.0, 1.0};
  std::size_t beam = 8;
  std::size_t spell_distance = 1;
  std::size_t jobs = 1;
  std::optional<std::uint64_t> seed;
  bool skip_errors = false;

  // ConfigError for out-of-range numbers, IoError for missing files.
  void Validate() const;
};

// Splits "source:path" into its parts.
std::pair<CandidateSource, std::filesystem::path> ParseConfusionSpec(const std::string& spec);

// Default deletion and insertion lists unless files are given; an empty BPE
// model (character pieces) unless a merge file is given.
CascadeResources LoadResources(const RunConfig& config);

// Throws ConfigError when no model is configured.
LmEnsemble LoadEnsemble(const RunConfig& config);

}  // namespace fstgec::cli
