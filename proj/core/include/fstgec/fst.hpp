#pragma once

// Weighted finite-state transducers over the tropical semiring.
//
// Weights are non-negative costs: paths multiply (add costs) and
// alternatives sum (take the minimum). Label 0 is epsilon and label 1 is
// sigma, an identity label matching any concrete symbol during composition.

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace fstgec {

using StateId = std::int32_t;
using Label = std::int32_t;

inline constexpr StateId kNoState = -1;
inline constexpr Label kEpsilon = 0;
inline constexpr Label kSigma = 1;

inline constexpr std::string_view kEpsilonSymbol = "<eps>";
inline constexpr std::string_view kSigmaSymbol = "<sigma>";

// Absolute tolerance used when weights are compared for equality.
inline constexpr double kWeightDelta = 1e-9;

class Weight {
 public:
  constexpr Weight() = default;
  constexpr explicit Weight(double cost) : cost_(cost) {}

  static constexpr Weight One() { return Weight(0.0); }
  static constexpr Weight Zero() {
    return Weight(std::numeric_limits<double>::infinity());
  }

  constexpr double Value() const { return cost_; }
  constexpr bool IsZero() const {
    return cost_ == std::numeric_limits<double>::infinity();
  }

  friend constexpr Weight Plus(Weight a, Weight b) {
    return a.cost_ <= b.cost_ ? a : b;
  }
  friend constexpr Weight Times(Weight a, Weight b) {
    return Weight(a.cost_ + b.cost_);
  }
  friend constexpr bool operator==(Weight a, Weight b) = default;

 private:
  double cost_ = 0.0;
};

bool ApproxEqual(Weight a, Weight b, double delta = kWeightDelta);

// Bidirectional string <-> label map. Ids 0 and 1 are reserved for
// epsilon and sigma and cannot be registered as ordinary strings.
class SymbolTable {
 public:
  SymbolTable();

  // Returns the existing id when the symbol is already registered.
  Label AddSymbol(std::string_view symbol);
  std::optional<Label> Find(std::string_view symbol) const;
  const std::string& Symbol(Label label) const;
  std::size_t Size() const { return symbols_.size(); }

  static bool IsReserved(std::string_view symbol) {
    return symbol == kEpsilonSymbol || symbol == kSigmaSymbol;
  }

  bool operator==(const SymbolTable& other) const {
    return symbols_ == other.symbols_;
  }

 private:
  std::vector<std::string> symbols_;
  std::unordered_map<std::string, Label> ids_;
};

using SymbolTablePtr = std::shared_ptr<SymbolTable>;

// Same object, or identical contents.
bool CompatibleSymbols(const SymbolTablePtr& a, const SymbolTablePtr& b);

struct Arc {
  Label ilabel = kEpsilon;
  Label olabel = kEpsilon;
  Weight weight = Weight::One();
  StateId next = kNoState;
};

class WeightedFst {
 public:
  WeightedFst(SymbolTablePtr isyms, SymbolTablePtr osyms);
  explicit WeightedFst(SymbolTablePtr syms) : WeightedFst(syms, syms) {}

  StateId AddState();
  void SetStart(StateId state);
  void SetFinal(StateId state, Weight weight = Weight::One());
  void AddArc(StateId from, const Arc& arc);
  void ReserveStates(std::size_t n) { states_.reserve(n); }

  StateId Start() const { return start_; }
  std::size_t NumStates() const { return states_.size(); }
  std::size_t NumArcs() const;
  std::span<const Arc> Arcs(StateId state) const {
    return states_[static_cast<std::size_t>(state)].arcs;
  }
  Weight Final(StateId state) const {
    return states_[static_cast<std::size_t>(state)].final;
  }
  bool IsFinal(StateId state) const { return !Final(state).IsZero(); }

  const SymbolTablePtr& InputSymbols() const { return isyms_; }
  const SymbolTablePtr& OutputSymbols() const { return osyms_; }

  bool IsAcceptor() const;
  bool HasEpsilons() const;

  // Throws StructuralError when the start state or an arc target is out of
  // range.
  void Validate() const;

 private:
  struct State {
    std::vector<Arc> arcs;
    Weight final = Weight::Zero();
  };

  SymbolTablePtr isyms_;
  SymbolTablePtr osyms_;
  std::vector<State> states_;
  StateId start_ = kNoState;
};

// Text interchange format, one item per line:
//   src<TAB>dst<TAB>isym<TAB>osym[<TAB>weight]   arc
//   state[<TAB>weight]                           final state
// State 0 is the start state. Symbols are registered in `syms` on read.
WeightedFst ReadFstText(std::istream& in, SymbolTablePtr syms);
void WriteFstText(std::ostream& out, const WeightedFst& fst);

}  // namespace fstgec
