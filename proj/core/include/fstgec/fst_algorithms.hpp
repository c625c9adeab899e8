#pragma once

// Tropical-semiring FST algorithms. Every operation is pure: it reads its
// operands and returns a new FST.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "fstgec/fst.hpp"

namespace fstgec {

// Weighted composition with a three-state epsilon filter, so every pair of
// operand paths with a common intermediate string yields exactly one result
// path. Sigma labels are inclusive: at a state that has both a sigma arc and
// an explicit arc on x, both match x. Sigma survives only where both sides
// carry it.
WeightedFst Compose(const WeightedFst& a, const WeightedFst& b);

// Replaces every input label with the output label.
WeightedFst ProjectOutput(const WeightedFst& fst);

// Removes arcs labelled epsilon on both sides.
WeightedFst RmEpsilon(const WeightedFst& fst);

// Weighted subset construction. Accepts only epsilon-free, acyclic
// acceptors; anything else raises StructuralError.
WeightedFst Determinize(const WeightedFst& fst);

// Pushes weights, then merges states with equal future behaviour by
// partition refinement. Requires a deterministic epsilon-free acceptor.
WeightedFst Minimize(const WeightedFst& fst);

// Reweights so that every non-start state has shortest distance 0 to a
// final state; the start state keeps the overall shortest distance on its
// outgoing arcs and final weight.
WeightedFst PushWeights(const WeightedFst& fst);

// Drops states that are not on some start-to-final path. An FST with an
// empty language comes back with no states and no start.
WeightedFst Connect(const WeightedFst& fst);

std::optional<std::vector<StateId>> TopologicalOrder(const WeightedFst& fst);
bool IsAcyclic(const WeightedFst& fst);
bool IsDeterministic(const WeightedFst& fst);

// Per-state shortest distance to any final state (Zero if none reachable).
std::vector<Weight> ShortestDistanceToFinal(const WeightedFst& fst);

// Weight with which an epsilon-free acceptor accepts `tokens` (Zero when it
// does not). Unknown symbols are simply not accepted.
Weight AcceptedWeight(const WeightedFst& fst, const std::vector<std::string>& tokens);

struct StringPath {
  std::vector<std::string> output;
  Weight weight;
};

// The n cheapest distinct output strings with their best weights. Equal
// weights are ordered lexicographically by token sequence.
std::vector<StringPath> ShortestPath(const WeightedFst& fst, std::size_t n);

struct EnumeratedPath {
  std::vector<std::string> input;
  std::vector<std::string> output;
  Weight weight;
};

// Every accepting path of an acyclic FST, duplicates kept. Throws
// ResourceError once more than `limit` paths exist.
std::vector<EnumeratedPath> EnumeratePaths(const WeightedFst& fst, std::size_t limit);

}  // namespace fstgec
