#include "fstgec/fst.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>

#include "fstgec/error.hpp"
#include "fstgec/text_util.hpp"

namespace fstgec {

bool ApproxEqual(Weight a, Weight b, double delta) {
  if (a.IsZero() || b.IsZero()) return a.IsZero() == b.IsZero();
  return std::fabs(a.Value() - b.Value()) <= delta;
}

SymbolTable::SymbolTable() {
  symbols_.emplace_back(kEpsilonSymbol);
  symbols_.emplace_back(kSigmaSymbol);
  ids_.emplace(std::string(kEpsilonSymbol), kEpsilon);
  ids_.emplace(std::string(kSigmaSymbol), kSigma);
}

Label SymbolTable::AddSymbol(std::string_view symbol) {
  if (symbol.empty()) throw InputError("empty symbol");
  if (IsReserved(symbol)) {
    throw InputError("reserved symbol cannot be registered: " +
                     std::string(symbol));
  }
  auto [it, inserted] =
      ids_.try_emplace(std::string(symbol), static_cast<Label>(symbols_.size()));
  if (inserted) symbols_.emplace_back(symbol);
  return it->second;
}

std::optional<Label> SymbolTable::Find(std::string_view symbol) const {
  auto it = ids_.find(std::string(symbol));
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

const std::string& SymbolTable::Symbol(Label label) const {
  if (label < 0 || static_cast<std::size_t>(label) >= symbols_.size()) {
    throw InputError("unknown label " + std::to_string(label));
  }
  return symbols_[static_cast<std::size_t>(label)];
}

bool CompatibleSymbols(const SymbolTablePtr& a, const SymbolTablePtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return *a == *b;
}

WeightedFst::WeightedFst(SymbolTablePtr isyms, SymbolTablePtr osyms)
    : isyms_(std::move(isyms)), osyms_(std::move(osyms)) {
  if (!isyms_ || !osyms_) throw ConfigError("FST requires symbol tables");
}

StateId WeightedFst::AddState() {
  states_.emplace_back();
  return static_cast<StateId>(states_.size() - 1);
}

void WeightedFst::SetStart(StateId state) {
  if (state < 0 || static_cast<std::size_t>(state) >= states_.size()) {
    throw StructuralError("start state out of range");
  }
  start_ = state;
}

void WeightedFst::SetFinal(StateId state, Weight weight) {
  if (state < 0 || static_cast<std::size_t>(state) >= states_.size()) {
    throw StructuralError("final state out of range");
  }
  states_[static_cast<std::size_t>(state)].final = weight;
}

void WeightedFst::AddArc(StateId from, const Arc& arc) {
  if (from < 0 || static_cast<std::size_t>(from) >= states_.size()) {
    throw StructuralError("arc source out of range");
  }
  states_[static_cast<std::size_t>(from)].arcs.push_back(arc);
}

std::size_t WeightedFst::NumArcs() const {
  std::size_t n = 0;
  for (const auto& s : states_) n += s.arcs.size();
  return n;
}

bool WeightedFst::IsAcceptor() const {
  for (const auto& s : states_) {
    for (const auto& a : s.arcs) {
      if (a.ilabel != a.olabel) return false;
    }
  }
  return true;
}

bool WeightedFst::HasEpsilons() const {
  for (const auto& s : states_) {
    for (const auto& a : s.arcs) {
      if (a.ilabel == kEpsilon || a.olabel == kEpsilon) return true;
    }
  }
  return false;
}

void WeightedFst::Validate() const {
  const auto n = static_cast<StateId>(states_.size());
  if (start_ == kNoState && n > 0) throw StructuralError("FST has no start state");
  if (start_ >= n) throw StructuralError("start state out of range");
  for (const auto& s : states_) {
    for (const auto& a : s.arcs) {
      if (a.next < 0 || a.next >= n) throw StructuralError("arc target out of range");
      if ((a.ilabel == kSigma) != (a.olabel == kSigma)) {
        throw StructuralError("sigma must appear on both sides of an arc");
      }
    }
  }
}

namespace {

StateId ParseState(std::string_view field, std::size_t line) {
  StateId value = 0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size() || value < 0) {
    throw ParseError("invalid state id '" + std::string(field) + "'", line);
  }
  return value;
}

double ParseWeight(std::string_view field, std::size_t line) {
  double value = 0.0;
  if (!ParseDouble(field, value) || value < 0.0) {
    throw ParseError("invalid weight '" + std::string(field) + "'", line);
  }
  return value;
}

Label LabelFor(SymbolTable& syms, std::string_view symbol) {
  if (symbol == kEpsilonSymbol) return kEpsilon;
  if (symbol == kSigmaSymbol) return kSigma;
  return syms.AddSymbol(symbol);
}

void EnsureState(WeightedFst& fst, StateId s) {
  while (static_cast<StateId>(fst.NumStates()) <= s) fst.AddState();
}

}  // namespace

WeightedFst ReadFstText(std::istream& in, SymbolTablePtr syms) {
  WeightedFst fst(syms);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (Trim(line).empty()) continue;
    auto fields = SplitTabs(line);
    if (fields.size() == 4 || fields.size() == 5) {
      StateId src = ParseState(fields[0], lineno);
      StateId dst = ParseState(fields[1], lineno);
      EnsureState(fst, std::max(src, dst));
      Arc arc;
      arc.ilabel = LabelFor(*syms, fields[2]);
      arc.olabel = LabelFor(*syms, fields[3]);
      arc.weight = Weight(fields.size() == 5 ? ParseWeight(fields[4], lineno) : 0.0);
      arc.next = dst;
      fst.AddArc(src, arc);
    } else if (fields.size() == 1 || fields.size() == 2) {
      StateId s = ParseState(fields[0], lineno);
      EnsureState(fst, s);
      fst.SetFinal(s, Weight(fields.size() == 2 ? ParseWeight(fields[1], lineno) : 0.0));
    } else {
      throw ParseError("expected 1, 2, 4 or 5 tab-separated fields", lineno);
    }
  }
  if (fst.NumStates() > 0) fst.SetStart(0);
  fst.Validate();
  return fst;
}

void WriteFstText(std::ostream& out, const WeightedFst& fst) {
  if (fst.Start() == kNoState) return;
  // State 0 must be the start state in the text form.
  const auto n = static_cast<StateId>(fst.NumStates());
  std::vector<StateId> order(fst.NumStates());
  std::vector<StateId> rename(fst.NumStates());
  order[0] = fst.Start();
  StateId k = 1;
  for (StateId s = 0; s < n; ++s) {
    if (s != fst.Start()) order[static_cast<std::size_t>(k++)] = s;
  }
  for (StateId i = 0; i < n; ++i) rename[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] = i;

  const auto& is = *fst.InputSymbols();
  const auto& os = *fst.OutputSymbols();
  for (StateId s : order) {
    for (const Arc& a : fst.Arcs(s)) {
      out << rename[static_cast<std::size_t>(s)] << '\t'
          << rename[static_cast<std::size_t>(a.next)] << '\t' << is.Symbol(a.ilabel)
          << '\t' << os.Symbol(a.olabel) << '\t' << FormatDouble(a.weight.Value())
          << '\n';
    }
  }
  for (StateId s : order) {
    if (fst.IsFinal(s)) {
      out << rename[static_cast<std::size_t>(s)] << '\t'
          << FormatDouble(fst.Final(s).Value()) << '\n';
    }
  }
}

}  // namespace fstgec
