#include "fstgec/fst_algorithms.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <map>
#include <queue>
#include <tuple>
#include <unordered_map>

#include "fstgec/error.hpp"

namespace fstgec {
namespace {

std::size_t Idx(StateId s) { return static_cast<std::size_t>(s); }

// Residuals and weights are hashed on a fixed grid so that values differing
// only by rounding noise land on the same key.
std::int64_t Quantize(double w) {
  if (std::isinf(w)) return std::numeric_limits<std::int64_t>::max();
  return std::llround(w * 1e10);
}

double ClampNonNegative(double w) { return w < 0.0 && w > -1e-6 ? 0.0 : w; }

WeightedFst EmptyLike(const WeightedFst& fst) {
  return WeightedFst(fst.InputSymbols(), fst.OutputSymbols());
}

struct ComposeKey {
  StateId a;
  StateId b;
  int filter;
  bool operator==(const ComposeKey&) const = default;
};

struct ComposeKeyHash {
  std::size_t operator()(const ComposeKey& k) const {
    std::uint64_t h = static_cast<std::uint32_t>(k.a);
    h = h * 0x9E3779B97F4A7C15ULL ^ static_cast<std::uint32_t>(k.b);
    h = h * 0x9E3779B97F4A7C15ULL ^ static_cast<std::uint64_t>(k.filter);
    return static_cast<std::size_t>(h ^ (h >> 29));
  }
};

// Arcs of one state ordered by input label for range lookups.
struct SortedArcs {
  std::vector<Arc> arcs;

  std::pair<const Arc*, const Arc*> Range(Label l) const {
    auto lo = std::lower_bound(arcs.begin(), arcs.end(), l,
                               [](const Arc& a, Label x) { return a.ilabel < x; });
    auto hi = std::upper_bound(arcs.begin(), arcs.end(), l,
                               [](Label x, const Arc& a) { return x < a.ilabel; });
    return {arcs.data() + (lo - arcs.begin()), arcs.data() + (hi - arcs.begin())};
  }
};

}  // namespace

WeightedFst Compose(const WeightedFst& a, const WeightedFst& b) {
  if (!CompatibleSymbols(a.OutputSymbols(), b.InputSymbols())) {
    throw ConfigError("compose: output symbols of the left operand differ from "
                      "input symbols of the right operand");
  }
  if (a.Start() == kNoState || b.Start() == kNoState) {
    throw StructuralError("compose: operand has no start state");
  }

  std::vector<SortedArcs> b_index(b.NumStates());
  for (StateId s = 0; s < static_cast<StateId>(b.NumStates()); ++s) {
    auto arcs = b.Arcs(s);
    b_index[Idx(s)].arcs.assign(arcs.begin(), arcs.end());
    std::stable_sort(b_index[Idx(s)].arcs.begin(), b_index[Idx(s)].arcs.end(),
                     [](const Arc& x, const Arc& y) { return x.ilabel < y.ilabel; });
  }

  WeightedFst out(a.InputSymbols(), b.OutputSymbols());
  std::unordered_map<ComposeKey, StateId, ComposeKeyHash> ids;
  std::deque<ComposeKey> queue;

  auto state_for = [&](const ComposeKey& k) {
    auto [it, inserted] = ids.try_emplace(k, kNoState);
    if (inserted) {
      it->second = out.AddState();
      queue.push_back(k);
    }
    return it->second;
  };

  out.SetStart(state_for({a.Start(), b.Start(), 0}));

  while (!queue.empty()) {
    const ComposeKey key = queue.front();
    queue.pop_front();
    const StateId src = ids.at(key);
    const auto& bs = b_index[Idx(key.b)];

    if (a.IsFinal(key.a) && b.IsFinal(key.b)) {
      out.SetFinal(src, Times(a.Final(key.a), b.Final(key.b)));
    }

    auto emit = [&](Label il, Label ol, Weight w, StateId na, StateId nb, int f) {
      out.AddArc(src, Arc{il, ol, w, state_for({na, nb, f})});
    };

    for (const Arc& ea : a.Arcs(key.a)) {
      if (ea.olabel == kEpsilon) {
        // Left moves alone while the right stays put.
        if (key.filter != 1) emit(ea.ilabel, kEpsilon, ea.weight, ea.next, key.b, 2);
        // Both move on epsilon at once.
        if (key.filter == 0) {
          auto [lo, hi] = bs.Range(kEpsilon);
          for (const Arc* eb = lo; eb != hi; ++eb) {
            emit(ea.ilabel, eb->olabel, Times(ea.weight, eb->weight), ea.next, eb->next, 0);
          }
        }
        continue;
      }
      if (ea.olabel == kSigma) {
        // Left sigma is an identity over every concrete symbol the right
        // side can read here.
        for (const Arc& eb : bs.arcs) {
          if (eb.ilabel == kEpsilon) continue;
          const Label il = eb.ilabel == kSigma ? kSigma : eb.ilabel;
          emit(il, eb.olabel, Times(ea.weight, eb.weight), ea.next, eb.next, 0);
        }
        continue;
      }
      auto [lo, hi] = bs.Range(ea.olabel);
      for (const Arc* eb = lo; eb != hi; ++eb) {
        emit(ea.ilabel, eb->olabel, Times(ea.weight, eb->weight), ea.next, eb->next, 0);
      }
      auto [slo, shi] = bs.Range(kSigma);
      for (const Arc* eb = slo; eb != shi; ++eb) {
        emit(ea.ilabel, ea.olabel, Times(ea.weight, eb->weight), ea.next, eb->next, 0);
      }
    }

    // Right moves alone on an epsilon input while the left stays put.
    if (key.filter != 2) {
      auto [lo, hi] = bs.Range(kEpsilon);
      for (const Arc* eb = lo; eb != hi; ++eb) {
        emit(kEpsilon, eb->olabel, eb->weight, key.a, eb->next, 1);
      }
    }
  }
  return out;
}

WeightedFst ProjectOutput(const WeightedFst& fst) {
  WeightedFst out(fst.OutputSymbols(), fst.OutputSymbols());
  out.ReserveStates(fst.NumStates());
  for (std::size_t s = 0; s < fst.NumStates(); ++s) out.AddState();
  for (StateId s = 0; s < static_cast<StateId>(fst.NumStates()); ++s) {
    for (Arc arc : fst.Arcs(s)) {
      arc.ilabel = arc.olabel;
      out.AddArc(s, arc);
    }
    out.SetFinal(s, fst.Final(s));
  }
  if (fst.Start() != kNoState) out.SetStart(fst.Start());
  return out;
}

WeightedFst RmEpsilon(const WeightedFst& fst) {
  if (fst.Start() == kNoState) return EmptyLike(fst);
  const auto n = static_cast<StateId>(fst.NumStates());
  WeightedFst out = EmptyLike(fst);
  out.ReserveStates(fst.NumStates());
  for (StateId s = 0; s < n; ++s) out.AddState();
  out.SetStart(fst.Start());

  auto is_eps = [](const Arc& a) { return a.ilabel == kEpsilon && a.olabel == kEpsilon; };

  std::vector<double> dist(fst.NumStates(), std::numeric_limits<double>::infinity());
  std::vector<StateId> touched;
  using Item = std::pair<double, StateId>;
  for (StateId s = 0; s < n; ++s) {
    // Epsilon closure of s by Dijkstra; all weights are non-negative.
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    dist[Idx(s)] = 0.0;
    touched.assign(1, s);
    heap.emplace(0.0, s);
    std::vector<StateId> settled;
    while (!heap.empty()) {
      auto [d, q] = heap.top();
      heap.pop();
      if (d > dist[Idx(q)]) continue;
      settled.push_back(q);
      for (const Arc& a : fst.Arcs(q)) {
        if (!is_eps(a)) continue;
        const double nd = d + a.weight.Value();
        if (nd < dist[Idx(a.next)]) {
          if (std::isinf(dist[Idx(a.next)])) touched.push_back(a.next);
          dist[Idx(a.next)] = nd;
          heap.emplace(nd, a.next);
        }
      }
    }
    std::sort(settled.begin(), settled.end());
    settled.erase(std::unique(settled.begin(), settled.end()), settled.end());
    Weight final = Weight::Zero();
    for (StateId q : settled) {
      const double d = dist[Idx(q)];
      for (const Arc& a : fst.Arcs(q)) {
        if (is_eps(a)) continue;
        Arc copy = a;
        copy.weight = Weight(d + a.weight.Value());
        out.AddArc(s, copy);
      }
      if (fst.IsFinal(q)) final = Plus(final, Weight(d + fst.Final(q).Value()));
    }
    out.SetFinal(s, final);
    for (StateId q : touched) dist[Idx(q)] = std::numeric_limits<double>::infinity();
  }
  return Connect(out);
}

std::optional<std::vector<StateId>> TopologicalOrder(const WeightedFst& fst) {
  const std::size_t n = fst.NumStates();
  std::vector<int> indegree(n, 0);
  for (StateId s = 0; s < static_cast<StateId>(n); ++s) {
    for (const Arc& a : fst.Arcs(s)) ++indegree[Idx(a.next)];
  }
  std::vector<StateId> order;
  order.reserve(n);
  std::vector<StateId> ready;
  for (StateId s = static_cast<StateId>(n) - 1; s >= 0; --s) {
    if (indegree[Idx(s)] == 0) ready.push_back(s);
  }
  while (!ready.empty()) {
    StateId s = ready.back();
    ready.pop_back();
    order.push_back(s);
    for (const Arc& a : fst.Arcs(s)) {
      if (--indegree[Idx(a.next)] == 0) ready.push_back(a.next);
    }
  }
  if (order.size() != n) return std::nullopt;
  return order;
}

bool IsAcyclic(const WeightedFst& fst) { return TopologicalOrder(fst).has_value(); }

bool IsDeterministic(const WeightedFst& fst) {
  std::vector<Label> labels;
  for (StateId s = 0; s < static_cast<StateId>(fst.NumStates()); ++s) {
    labels.clear();
    for (const Arc& a : fst.Arcs(s)) labels.push_back(a.ilabel);
    std::sort(labels.begin(), labels.end());
    if (std::adjacent_find(labels.begin(), labels.end()) != labels.end()) return false;
  }
  return true;
}

WeightedFst Determinize(const WeightedFst& fst) {
  if (fst.Start() == kNoState) return EmptyLike(fst);
  if (!fst.IsAcceptor()) throw StructuralError("determinize: input is not an acceptor");
  if (fst.HasEpsilons()) throw StructuralError("determinize: input has epsilon arcs");
  if (!IsAcyclic(fst)) throw StructuralError("determinize: input is cyclic");

  using Subset = std::vector<std::pair<StateId, double>>;
  using Key = std::vector<std::pair<StateId, std::int64_t>>;
  auto key_of = [](const Subset& subset) {
    Key k;
    k.reserve(subset.size());
    for (auto [q, r] : subset) k.emplace_back(q, Quantize(r));
    return k;
  };

  WeightedFst out = EmptyLike(fst);
  std::map<Key, StateId> ids;
  std::vector<Subset> subsets;
  std::deque<StateId> queue;

  auto state_for = [&](Subset subset) {
    auto [it, inserted] = ids.try_emplace(key_of(subset), kNoState);
    if (inserted) {
      it->second = out.AddState();
      subsets.push_back(std::move(subset));
      queue.push_back(it->second);
    }
    return it->second;
  };

  out.SetStart(state_for(Subset{{fst.Start(), 0.0}}));

  while (!queue.empty()) {
    const StateId id = queue.front();
    queue.pop_front();
    const Subset subset = subsets[Idx(id)];

    Weight final = Weight::Zero();
    std::map<Label, std::vector<std::pair<StateId, double>>> by_label;
    for (auto [q, r] : subset) {
      if (fst.IsFinal(q)) final = Plus(final, Weight(r + fst.Final(q).Value()));
      for (const Arc& a : fst.Arcs(q)) {
        by_label[a.ilabel].emplace_back(a.next, r + a.weight.Value());
      }
    }
    out.SetFinal(id, final);

    for (auto& [label, targets] : by_label) {
      double best = std::numeric_limits<double>::infinity();
      for (auto [q, w] : targets) best = std::min(best, w);
      std::map<StateId, double> residual;
      for (auto [q, w] : targets) {
        auto [it, inserted] = residual.try_emplace(q, w - best);
        if (!inserted) it->second = std::min(it->second, w - best);
      }
      Subset next;
      next.reserve(residual.size());
      for (auto [q, r] : residual) next.emplace_back(q, ClampNonNegative(r));
      const StateId target = state_for(std::move(next));
      out.AddArc(id, Arc{label, label, Weight(best), target});
    }
  }
  return out;
}

std::vector<Weight> ShortestDistanceToFinal(const WeightedFst& fst) {
  const std::size_t n = fst.NumStates();
  std::vector<std::vector<std::pair<StateId, double>>> reverse(n);
  for (StateId s = 0; s < static_cast<StateId>(n); ++s) {
    for (const Arc& a : fst.Arcs(s)) reverse[Idx(a.next)].emplace_back(s, a.weight.Value());
  }
  std::vector<double> dist(n, std::numeric_limits<double>::infinity());
  using Item = std::pair<double, StateId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  for (StateId s = 0; s < static_cast<StateId>(n); ++s) {
    if (fst.IsFinal(s)) {
      dist[Idx(s)] = fst.Final(s).Value();
      heap.emplace(dist[Idx(s)], s);
    }
  }
  while (!heap.empty()) {
    auto [d, q] = heap.top();
    heap.pop();
    if (d > dist[Idx(q)]) continue;
    for (auto [p, w] : reverse[Idx(q)]) {
      if (d + w < dist[Idx(p)]) {
        dist[Idx(p)] = d + w;
        heap.emplace(d + w, p);
      }
    }
  }
  std::vector<Weight> out;
  out.reserve(n);
  for (double d : dist) out.emplace_back(d);
  return out;
}

WeightedFst PushWeights(const WeightedFst& input) {
  WeightedFst fst = Connect(input);
  if (fst.Start() == kNoState) {
    throw StructuralError("push_weights: no final state is reachable");
  }
  const auto dist = ShortestDistanceToFinal(fst);
  const auto n = static_cast<StateId>(fst.NumStates());

  bool start_has_incoming = false;
  for (StateId s = 0; s < n && !start_has_incoming; ++s) {
    for (const Arc& a : fst.Arcs(s)) start_has_incoming |= a.next == fst.Start();
  }

  WeightedFst out = EmptyLike(fst);
  out.ReserveStates(fst.NumStates() + 1);
  for (StateId s = 0; s < n; ++s) out.AddState();

  auto reweighted = [&](StateId s, const Arc& a) {
    Arc copy = a;
    copy.weight = Weight(ClampNonNegative(a.weight.Value() + dist[Idx(a.next)].Value() -
                                          dist[Idx(s)].Value()));
    return copy;
  };
  for (StateId s = 0; s < n; ++s) {
    for (const Arc& a : fst.Arcs(s)) out.AddArc(s, reweighted(s, a));
    if (fst.IsFinal(s)) {
      out.SetFinal(s, Weight(ClampNonNegative(fst.Final(s).Value() - dist[Idx(s)].Value())));
    }
  }

  // The start state carries the total shortest distance.
  const double total = dist[Idx(fst.Start())].Value();
  StateId start = fst.Start();
  if (start_has_incoming) {
    start = out.AddState();
    for (const Arc& a : fst.Arcs(fst.Start())) out.AddArc(start, reweighted(fst.Start(), a));
    if (fst.IsFinal(fst.Start())) out.SetFinal(start, out.Final(fst.Start()));
  }
  WeightedFst result = EmptyLike(fst);
  result.ReserveStates(out.NumStates());
  for (std::size_t s = 0; s < out.NumStates(); ++s) result.AddState();
  for (StateId s = 0; s < static_cast<StateId>(out.NumStates()); ++s) {
    for (Arc a : out.Arcs(s)) {
      if (s == start) a.weight = Weight(a.weight.Value() + total);
      result.AddArc(s, a);
    }
    Weight f = out.Final(s);
    if (s == start && !f.IsZero()) f = Weight(f.Value() + total);
    result.SetFinal(s, f);
  }
  result.SetStart(start);
  return start_has_incoming ? Connect(result) : result;
}

WeightedFst Minimize(const WeightedFst& input) {
  if (!input.IsAcceptor() || input.HasEpsilons()) {
    throw StructuralError("minimize: input must be an epsilon-free acceptor");
  }
  if (!IsDeterministic(input)) throw StructuralError("minimize: input is not deterministic");
  WeightedFst connected = Connect(input);
  if (connected.Start() == kNoState) return connected;
  const WeightedFst fst = PushWeights(connected);
  const auto n = static_cast<StateId>(fst.NumStates());

  std::vector<int> cls(fst.NumStates());
  {
    std::map<std::int64_t, int> initial;
    for (StateId s = 0; s < n; ++s) {
      const auto k = Quantize(fst.Final(s).Value());
      auto [it, _] = initial.try_emplace(k, static_cast<int>(initial.size()));
      cls[Idx(s)] = it->second;
    }
  }
  using Signature = std::pair<int, std::vector<std::tuple<Label, std::int64_t, int>>>;
  std::size_t num_classes = 0;
  while (true) {
    std::map<Signature, int> sigs;
    std::vector<int> next_cls(fst.NumStates());
    for (StateId s = 0; s < n; ++s) {
      Signature sig;
      sig.first = cls[Idx(s)];
      for (const Arc& a : fst.Arcs(s)) {
        sig.second.emplace_back(a.ilabel, Quantize(a.weight.Value()), cls[Idx(a.next)]);
      }
      std::sort(sig.second.begin(), sig.second.end());
      auto [it, _] = sigs.try_emplace(std::move(sig), static_cast<int>(sigs.size()));
      next_cls[Idx(s)] = it->second;
    }
    cls.swap(next_cls);
    if (sigs.size() == num_classes) break;
    num_classes = sigs.size();
  }

  // Renumber classes in order of first appearance so the start stays early.
  std::vector<StateId> class_state(num_classes, kNoState);
  WeightedFst out = EmptyLike(fst);
  std::vector<StateId> representative;
  for (StateId s = 0; s < n; ++s) {
    auto c = Idx(cls[Idx(s)]);
    if (class_state[c] == kNoState) {
      class_state[c] = out.AddState();
      representative.push_back(s);
    }
  }
  for (StateId r : representative) {
    const StateId id = class_state[Idx(cls[Idx(r)])];
    for (const Arc& a : fst.Arcs(r)) {
      out.AddArc(id, Arc{a.ilabel, a.olabel, a.weight, class_state[Idx(cls[Idx(a.next)])]});
    }
    out.SetFinal(id, fst.Final(r));
  }
  out.SetStart(class_state[Idx(cls[Idx(fst.Start())])]);
  return out;
}

WeightedFst Connect(const WeightedFst& fst) {
  if (fst.Start() == kNoState) return EmptyLike(fst);
  const std::size_t n = fst.NumStates();
  std::vector<char> access(n, 0), coaccess(n, 0);
  std::vector<StateId> stack{fst.Start()};
  access[Idx(fst.Start())] = 1;
  while (!stack.empty()) {
    StateId s = stack.back();
    stack.pop_back();
    for (const Arc& a : fst.Arcs(s)) {
      if (!access[Idx(a.next)]) {
        access[Idx(a.next)] = 1;
        stack.push_back(a.next);
      }
    }
  }
  std::vector<std::vector<StateId>> reverse(n);
  for (StateId s = 0; s < static_cast<StateId>(n); ++s) {
    for (const Arc& a : fst.Arcs(s)) reverse[Idx(a.next)].push_back(s);
    if (fst.IsFinal(s)) {
      coaccess[Idx(s)] = 1;
      stack.push_back(s);
    }
  }
  while (!stack.empty()) {
    StateId s = stack.back();
    stack.pop_back();
    for (StateId p : reverse[Idx(s)]) {
      if (!coaccess[Idx(p)]) {
        coaccess[Idx(p)] = 1;
        stack.push_back(p);
      }
    }
  }
  WeightedFst out = EmptyLike(fst);
  if (!coaccess[Idx(fst.Start())]) return out;
  std::vector<StateId> rename(n, kNoState);
  for (StateId s = 0; s < static_cast<StateId>(n); ++s) {
    if (access[Idx(s)] && coaccess[Idx(s)]) rename[Idx(s)] = out.AddState();
  }
  for (StateId s = 0; s < static_cast<StateId>(n); ++s) {
    if (rename[Idx(s)] == kNoState) continue;
    for (const Arc& a : fst.Arcs(s)) {
      if (rename[Idx(a.next)] == kNoState) continue;
      out.AddArc(rename[Idx(s)], Arc{a.ilabel, a.olabel, a.weight, rename[Idx(a.next)]});
    }
    out.SetFinal(rename[Idx(s)], fst.Final(s));
  }
  out.SetStart(rename[Idx(fst.Start())]);
  return out;
}

Weight AcceptedWeight(const WeightedFst& fst, const std::vector<std::string>& tokens) {
  if (fst.Start() == kNoState) return Weight::Zero();
  if (fst.HasEpsilons()) throw StructuralError("accepted_weight: input has epsilon arcs");
  std::map<StateId, double> frontier{{fst.Start(), 0.0}};
  for (const auto& t : tokens) {
    auto label = fst.InputSymbols()->Find(t);
    if (!label) return Weight::Zero();
    std::map<StateId, double> next;
    for (auto [s, c] : frontier) {
      for (const Arc& a : fst.Arcs(s)) {
        if (a.ilabel != *label) continue;
        auto [it, inserted] = next.try_emplace(a.next, c + a.weight.Value());
        if (!inserted) it->second = std::min(it->second, c + a.weight.Value());
      }
    }
    frontier.swap(next);
    if (frontier.empty()) return Weight::Zero();
  }
  Weight best = Weight::Zero();
  for (auto [s, c] : frontier) {
    if (fst.IsFinal(s)) best = Plus(best, Weight(c + fst.Final(s).Value()));
  }
  return best;
}

std::vector<StringPath> ShortestPath(const WeightedFst& fst, std::size_t n) {
  if (n == 0 || fst.Start() == kNoState) return {};
  if (!IsAcyclic(fst)) throw StructuralError("shortest_path: input is cyclic");
  // One path per output string after determinizing the output language.
  const WeightedFst det = Determinize(RmEpsilon(ProjectOutput(fst)));
  if (det.Start() == kNoState) return {};
  const auto future = ShortestDistanceToFinal(det);
  const auto& syms = *det.OutputSymbols();

  struct Item {
    double priority;
    double cost;
    std::vector<std::string> output;
    StateId state;  // kNoState marks a completed string
  };
  auto worse = [](const Item& x, const Item& y) {
    if (x.priority != y.priority) return x.priority > y.priority;
    if (x.output != y.output) return x.output > y.output;
    return x.state < y.state;
  };
  std::priority_queue<Item, std::vector<Item>, decltype(worse)> heap(worse);
  if (!future[Idx(det.Start())].IsZero()) {
    heap.push(Item{future[Idx(det.Start())].Value(), 0.0, {}, det.Start()});
  }

  std::vector<StringPath> results;
  while (!heap.empty()) {
    Item item = heap.top();
    heap.pop();
    if (results.size() >= n &&
        item.priority > results.back().weight.Value() + kWeightDelta) {
      break;
    }
    if (item.state == kNoState) {
      results.push_back(StringPath{std::move(item.output), Weight(item.cost)});
      continue;
    }
    if (det.IsFinal(item.state)) {
      const double c = item.cost + det.Final(item.state).Value();
      heap.push(Item{c, c, item.output, kNoState});
    }
    for (const Arc& a : det.Arcs(item.state)) {
      if (future[Idx(a.next)].IsZero()) continue;
      Item next{0.0, item.cost + a.weight.Value(), item.output, a.next};
      next.output.push_back(syms.Symbol(a.olabel));
      next.priority = next.cost + future[Idx(a.next)].Value();
      heap.push(std::move(next));
    }
  }
  std::stable_sort(results.begin(), results.end(), [](const StringPath& x, const StringPath& y) {
    const auto qx = Quantize(x.weight.Value() * 0.1);
    const auto qy = Quantize(y.weight.Value() * 0.1);
    if (qx != qy) return qx < qy;
    return x.output < y.output;
  });
  if (results.size() > n) results.resize(n);
  return results;
}

std::vector<EnumeratedPath> EnumeratePaths(const WeightedFst& fst, std::size_t limit) {
  std::vector<EnumeratedPath> paths;
  if (fst.Start() == kNoState) return paths;
  if (!IsAcyclic(fst)) throw StructuralError("enumerate_paths: input is cyclic");
  const auto& isyms = *fst.InputSymbols();
  const auto& osyms = *fst.OutputSymbols();

  EnumeratedPath current;
  std::function<void(StateId, double)> visit = [&](StateId s, double cost) {
    if (fst.IsFinal(s)) {
      if (paths.size() >= limit) {
        throw ResourceError("enumerate_paths: more than " + std::to_string(limit) + " paths");
      }
      paths.push_back(current);
      paths.back().weight = Weight(cost + fst.Final(s).Value());
    }
    for (const Arc& a : fst.Arcs(s)) {
      if (a.ilabel != kEpsilon) current.input.push_back(isyms.Symbol(a.ilabel));
      if (a.olabel != kEpsilon) current.output.push_back(osyms.Symbol(a.olabel));
      visit(a.next, cost + a.weight.Value());
      if (a.olabel != kEpsilon) current.output.pop_back();
      if (a.ilabel != kEpsilon) current.input.pop_back();
    }
  };
  visit(fst.Start(), 0.0);
  return paths;
}

}  // namespace fstgec
