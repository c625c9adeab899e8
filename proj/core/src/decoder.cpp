#include "fstgec/decoder.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <utility>

#include "fstgec/error.hpp"
#include "fstgec/fst_algorithms.hpp"

namespace fstgec {
namespace {

struct Hyp {
  StateId state = kNoState;
  std::vector<LmState> lm;
  double fst = 0.0;
  double lmc = 0.0;
  std::vector<Label> out;

  double Cost() const { return fst + lmc; }
};

class Ranker {
 public:
  explicit Ranker(const SymbolTable& syms) : syms_(syms) {}

  bool OutputLess(const std::vector<Label>& a, const std::vector<Label>& b) const {
    return std::lexicographical_compare(
        a.begin(), a.end(), b.begin(), b.end(),
        [this](Label x, Label y) { return x != y && syms_.Symbol(x) < syms_.Symbol(y); });
  }

  bool Better(double cost_a, const std::vector<Label>& out_a, double cost_b,
              const std::vector<Label>& out_b) const {
    if (cost_a != cost_b) return cost_a < cost_b;
    return OutputLess(out_a, out_b);
  }

  bool Better(const Hyp& a, const Hyp& b) const { return Better(a.Cost(), a.out, b.Cost(), b.out); }

 private:
  const SymbolTable& syms_;
};

void CheckSearchable(const WeightedFst& hspace) {
  if (hspace.Start() == kNoState) throw StructuralError("hypothesis space has no start state");
  if (hspace.HasEpsilons()) throw StructuralError("decoding requires an epsilon-free FST");
}

// Tracks the best completed hypothesis.
class Completion {
 public:
  Completion(const Ranker& ranker, const LmEnsemble& lm) : ranker_(ranker), lm_(lm) {}

  void Offer(const Hyp& h, Weight final) {
    const double fst = h.fst + final.Value();
    const double lmc = h.lmc + lm_.EndCost(h.lm);
    if (!best_ || ranker_.Better(fst + lmc, h.out, best_->fst + best_->lmc, best_->out)) {
      best_ = Hyp{h.state, {}, fst, lmc, h.out};
    }
  }

  DecodeResult Result(const SymbolTable& syms, std::size_t joint_states) const {
    if (!best_) throw InternalError("search finished without a completed hypothesis");
    DecodeResult r;
    for (Label l : best_->out) r.output.push_back(syms.Symbol(l));
    r.fst_cost = best_->fst;
    r.lm_cost = best_->lmc;
    r.cost = best_->Cost();
    r.joint_states = joint_states;
    return r;
  }

 private:
  const Ranker& ranker_;
  const LmEnsemble& lm_;
  std::optional<Hyp> best_;
};

}  // namespace

DecodeResult BeamDecode(const WeightedFst& hspace, const LmEnsemble& lm, std::size_t beam) {
  if (beam < 1) throw InputError("beam size must be at least 1");
  CheckSearchable(hspace);
  const SymbolTable& syms = *hspace.OutputSymbols();
  const Ranker ranker(syms);
  Completion done(ranker, lm);

  std::vector<Hyp> frontier;
  frontier.push_back(Hyp{hspace.Start(), lm.Start(), 0.0, 0.0, {}});
  std::size_t joint_states = 0;
  std::size_t steps = 0;
  while (!frontier.empty()) {
    if (++steps > hspace.NumStates() + 1) throw StructuralError("beam search requires an acyclic FST");
    joint_states += frontier.size();
    std::map<std::pair<StateId, std::vector<LmState>>, std::size_t> index;
    std::vector<Hyp> next;
    for (const Hyp& h : frontier) {
      if (hspace.IsFinal(h.state)) done.Offer(h, hspace.Final(h.state));
      for (const Arc& arc : hspace.Arcs(h.state)) {
        auto [cost, states] = lm.Score(h.lm, syms.Symbol(arc.olabel));
        Hyp n{arc.next, std::move(states), h.fst + arc.weight.Value(), h.lmc + cost, h.out};
        n.out.push_back(arc.olabel);
        auto [it, inserted] = index.try_emplace({n.state, n.lm}, next.size());
        if (inserted) {
          next.push_back(std::move(n));
        } else if (ranker.Better(n, next[it->second])) {
          next[it->second] = std::move(n);
        }
      }
    }
    if (next.size() > beam) {
      std::partial_sort(next.begin(), next.begin() + static_cast<std::ptrdiff_t>(beam), next.end(),
                        [&](const Hyp& a, const Hyp& b) { return ranker.Better(a, b); });
      next.resize(beam);
    }
    frontier = std::move(next);
  }
  return done.Result(syms, joint_states);
}

DecodeResult ExactDecode(const WeightedFst& hspace, const LmEnsemble& lm,
                         std::size_t max_joint_states) {
  CheckSearchable(hspace);
  const auto order = TopologicalOrder(hspace);
  if (!order) throw StructuralError("exact decoding requires an acyclic FST");
  const SymbolTable& syms = *hspace.OutputSymbols();
  const Ranker ranker(syms);
  Completion done(ranker, lm);

  // Per FST state: LM states -> best partial hypothesis reaching them.
  std::vector<std::map<std::vector<LmState>, Hyp>> table(hspace.NumStates());
  table[static_cast<std::size_t>(hspace.Start())].emplace(
      lm.Start(), Hyp{hspace.Start(), lm.Start(), 0.0, 0.0, {}});
  std::size_t joint_states = 0;
  for (StateId s : *order) {
    auto& here = table[static_cast<std::size_t>(s)];
    joint_states += here.size();
    if (joint_states > max_joint_states) {
      throw ResourceError("exact decoding exceeds " + std::to_string(max_joint_states) +
                          " joint states");
    }
    for (const auto& [key, h] : here) {
      if (hspace.IsFinal(s)) done.Offer(h, hspace.Final(s));
      for (const Arc& arc : hspace.Arcs(s)) {
        auto [cost, states] = lm.Score(h.lm, syms.Symbol(arc.olabel));
        Hyp n{arc.next, states, h.fst + arc.weight.Value(), h.lmc + cost, h.out};
        n.out.push_back(arc.olabel);
        auto& there = table[static_cast<std::size_t>(arc.next)];
        auto it = there.find(states);
        if (it == there.end()) {
          there.emplace(std::move(states), std::move(n));
        } else if (ranker.Better(n, it->second)) {
          it->second = std::move(n);
        }
      }
    }
    here.clear();
  }
  return done.Result(syms, joint_states);
}

}  // namespace fstgec
