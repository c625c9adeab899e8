#pragma once

// LM-scored search over a hypothesis space. The total cost of an output is
// its FST path weight plus the ensemble cost of the token sequence,
// including the end-of-sentence cost.

#include <cstddef>
#include <string>
#include <vector>

#include "fstgec/fst.hpp"
#include "fstgec/ngram_lm.hpp"

namespace fstgec {

struct DecodeResult {
  std::vector<std::string> output;  // BPE tokens
  double cost = 0.0;
  double fst_cost = 0.0;
  double lm_cost = 0.0;
  // Distinct (FST state, LM states) pairs visited.
  std::size_t joint_states = 0;
};

// Synchronous beam search: every surviving hypothesis advances by one token
// per step, hypotheses sharing (FST state, LM states) are recombined and the
// `beam` cheapest survive. Equal costs are ordered by output token sequence.
// Requires an epsilon-free acyclic acceptor; throws InputError on beam < 1.
DecodeResult BeamDecode(const WeightedFst& hspace, const LmEnsemble& lm, std::size_t beam);

// Exact minimum by dynamic programming over (FST state, LM states) in
// topological order. Throws ResourceError past `max_joint_states`.
DecodeResult ExactDecode(const WeightedFst& hspace, const LmEnsemble& lm,
                         std::size_t max_joint_states = 1'000'000);

}  // namespace fstgec
