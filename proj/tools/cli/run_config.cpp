#include "run_config.hpp"

#include <cmath>

#include "fstgec/error.hpp"

namespace fstgec::cli {

namespace {

void RequireFile(const std::filesystem::path& path, const char* what) {
  std::error_code ec;
  if (!std::filesystem::is_regular_file(path, ec)) {
    throw IoError(std::string(what) + " file not found: " + path.string());
  }
}

}  // namespace

std::pair<CandidateSource, std::filesystem::path> ParseConfusionSpec(const std::string& spec) {
  static const std::pair<const char*, CandidateSource> kSources[] = {
      {"spell", CandidateSource::kSpell},
      {"morph", CandidateSource::kMorph},
      {"manual", CandidateSource::kManual},
      {"dev", CandidateSource::kDev},
  };
  const auto colon = spec.find(':');
  if (colon != std::string::npos) {
    const std::string prefix = spec.substr(0, colon);
    for (const auto& [name, source] : kSources) {
      if (prefix == name) return {source, spec.substr(colon + 1)};
    }
  }
  return {CandidateSource::kManual, spec};
}

void RunConfig::Validate() const {
  for (double l : {penalties.lambda_del, penalties.lambda_sub, penalties.lambda_ins}) {
    if (!std::isfinite(l) || l < 0.0) throw ConfigError("penalties must be finite and >= 0");
  }
  if (beam < 1) throw ConfigError("beam must be at least 1");
  if (spell_distance < 1 || spell_distance > 2) throw ConfigError("spell-distance must be 1 or 2");
  if (lexicon) RequireFile(*lexicon, "lexicon");
  for (const auto& c : confusions) RequireFile(ParseConfusionSpec(c).second, "confusion");
  if (deletions) RequireFile(*deletions, "deletion list");
  if (insertions) RequireFile(*insertions, "insertion list");
  if (bpe) RequireFile(*bpe, "BPE merge");
  for (const auto& lm : lms) RequireFile(lm, "language model");
}

CascadeResources LoadResources(const RunConfig& config) {
  config.Validate();
  CascadeResources res;
  res.penalties = config.penalties;
  res.spell_distance = config.spell_distance;
  if (config.deletions) res.deletions = LoadDeletionList(*config.deletions);
  if (config.insertions) res.insertions = LoadInsertionList(*config.insertions);
  if (config.bpe) res.bpe = std::make_shared<BpeModel>(LoadBpeModel(*config.bpe));
  if (config.lexicon) res.lexicon = std::make_shared<Lexicon>(LoadLexicon(*config.lexicon));
  std::vector<ConfusionCatalog> parts;
  for (const auto& spec : config.confusions) {
    const auto [source, path] = ParseConfusionSpec(spec);
    parts.push_back(LoadConfusionTsv(path, source));
  }
  res.confusions = std::make_shared<ConfusionCatalog>(MergeCatalogs(parts));
  return res;
}

LmEnsemble LoadEnsemble(const RunConfig& config) {
  if (config.lms.empty()) throw ConfigError("no language model given (--lm)");
  std::vector<std::shared_ptr<const LanguageModel>> members;
  for (const auto& path : config.lms) {
    RequireFile(path, "language model");
    members.push_back(std::make_shared<NgramLm>(NgramLm::LoadArpa(path)));
  }
  return LmEnsemble(std::move(members));
}

}  // namespace fstgec::cli
