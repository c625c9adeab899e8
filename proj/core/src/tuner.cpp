#include "fstgec/tuner.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <exception>
#include <map>
#include <mutex>
#include <optional>
#include <thread>

#include "fstgec/decoder.hpp"

namespace fstgec {

std::vector<std::string> CorrectSentence(const std::vector<std::string>& tokens,
                                         const CascadeResources& res, const LmEnsemble& lm,
                                         std::size_t beam) {
  if (tokens.empty()) return {};
  const WeightedFst hspace = BuildHypothesisSpace(tokens, res);
  const DecodeResult best = BeamDecode(hspace, lm, beam);
  return DecodeBpe(best.output, res.bpe->Separator());
}

namespace {

// Runs `body(i)` for every index on up to `jobs` threads.
template <typename Body>
void ParallelFor(std::size_t n, std::size_t jobs, const Body& body) {
  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  jobs = std::min(jobs, std::max<std::size_t>(n, 1));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) body(i);
  };
  if (jobs <= 1) {
    worker();
    return;
  }
  std::vector<std::jthread> pool;
  for (std::size_t j = 0; j < jobs; ++j) pool.emplace_back(worker);
}

}  // namespace

std::vector<std::vector<std::string>> CorrectSentences(
    const std::vector<std::vector<std::string>>& sentences, const CascadeResources& res,
    const LmEnsemble& lm, std::size_t beam, std::size_t jobs) {
  std::vector<std::vector<std::string>> out(sentences.size());
  std::mutex failure_mutex;
  std::size_t failed_index = sentences.size();
  std::exception_ptr failure;
  std::atomic<bool> stop{false};

  ParallelFor(sentences.size(), jobs, [&](std::size_t i) {
    if (stop) return;
    try {
      out[i] = CorrectSentence(sentences[i], res, lm, beam);
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (i < failed_index) {
        failed_index = i;
        failure = std::current_exception();
      }
      stop = true;
    }
  });

  if (failure) {
    try {
      std::rethrow_exception(failure);
    } catch (const std::exception& e) {
      std::throw_with_nested(SentenceError(failed_index, e.what()));
    }
  }
  return out;
}

std::vector<std::vector<std::string>> CorrectSentencesSkippingErrors(
    const std::vector<std::vector<std::string>>& sentences, const CascadeResources& res,
    const LmEnsemble& lm, std::size_t beam, std::size_t jobs,
    std::vector<SentenceFailure>& failures) {
  std::vector<std::vector<std::string>> out(sentences.size());
  std::vector<std::optional<std::string>> errors(sentences.size());
  ParallelFor(sentences.size(), jobs, [&](std::size_t i) {
    try {
      out[i] = CorrectSentence(sentences[i], res, lm, beam);
    } catch (const std::exception& e) {
      out[i] = sentences[i];
      errors[i] = e.what();
    }
  });
  failures.clear();
  for (std::size_t i = 0; i < errors.size(); ++i) {
    if (errors[i]) failures.push_back({i, *errors[i]});
  }
  return out;
}

ScoreReport EvaluatePenalties(const std::vector<M2Record>& dev, CascadeResources res,
                              const LmEnsemble& lm, const PenaltyVector& penalties,
                              std::size_t beam, std::size_t jobs) {
  penalties.Validate();
  res.penalties = penalties;
  std::vector<std::vector<std::string>> sources;
  sources.reserve(dev.size());
  for (const auto& r : dev) sources.push_back(r.source);
  return ScoreCorpus(CorrectSentences(sources, res, lm, beam, jobs), dev);
}

namespace {

double& Component(PenaltyVector& p, int i) {
  switch (i) {
    case 0:
      return p.lambda_del;
    case 1:
      return p.lambda_sub;
    default:
      return p.lambda_ins;
  }
}

void CheckOptions(const TunerOptions& o) {
  if (!(o.lambda_max > 0.0) || !std::isfinite(o.lambda_max)) {
    throw ConfigError("lambda_max must be positive");
  }
  if (o.max_cycles < 1) throw ConfigError("max_cycles must be at least 1");
  if (o.scan_points < 2) throw ConfigError("scan_points must be at least 2");
  if (!(o.tolerance > 0.0)) throw ConfigError("tolerance must be positive");
  if (o.beam < 1) throw InputError("beam size must be at least 1");
}

}  // namespace

TuneResult PowellTune(const std::vector<M2Record>& dev, const CascadeResources& res,
                      const LmEnsemble& lm, const PenaltyVector& init,
                      const TunerOptions& options, const TuneProgress& progress) {
  if (dev.empty()) throw InputError("tuning needs a non-empty dev set");
  init.Validate();
  CheckOptions(options);

  TuneResult result;
  std::map<std::array<double, 3>, double> cache;
  bool have_best = false;

  auto evaluate = [&](const PenaltyVector& p) {
    const std::array<double, 3> key{p.lambda_del, p.lambda_sub, p.lambda_ins};
    if (auto it = cache.find(key); it != cache.end()) return it->second;
    const ScoreReport report = EvaluatePenalties(dev, res, lm, p, options.beam, options.jobs);
    cache.emplace(key, report.f_half);
    ++result.evaluations;
    if (!have_best || report.f_half > result.best_f) {
      have_best = true;
      result.best = p;
      result.best_f = report.f_half;
      result.report = report;
    }
    result.best_so_far.push_back(result.best_f);
    return report.f_half;
  };

  PenaltyVector current = init;
  double current_f = evaluate(current);
  const double step = options.lambda_max / (options.scan_points - 1);
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;

  for (int cycle = 0; cycle < options.max_cycles; ++cycle) {
    const double cycle_start = result.best_f;
    for (int coord = 0; coord < 3; ++coord) {
      double best_x = Component(current, coord);
      double best_fx = current_f;
      auto at = [&](double x) {
        PenaltyVector p = current;
        Component(p, coord) = x;
        const double fx = evaluate(p);
        if (fx > best_fx) {
          best_fx = fx;
          best_x = x;
        }
        return fx;
      };

      for (int i = 0; i < options.scan_points; ++i) at(i * step);

      double a = std::max(0.0, best_x - step);
      double b = std::min(options.lambda_max, best_x + step);
      double c = b - inv_phi * (b - a);
      double d = a + inv_phi * (b - a);
      double fc = at(c);
      double fd = at(d);
      while (b - a > options.tolerance) {
        if (fc >= fd) {
          b = d;
          d = c;
          fd = fc;
          c = b - inv_phi * (b - a);
          fc = at(c);
        } else {
          a = c;
          c = d;
          fc = fd;
          d = a + inv_phi * (b - a);
          fd = at(d);
        }
      }
      Component(current, coord) = best_x;
      current_f = best_fx;
    }
    result.cycle_best.push_back(result.best_f);
    if (progress) progress(cycle + 1, result.best_f, result.best);
    if (result.best_f - cycle_start < options.min_improvement) break;
  }
  return result;
}

}  // namespace fstgec
