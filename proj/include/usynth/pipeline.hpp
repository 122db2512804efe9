// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>

#include "usynth/decompose.hpp"
#include "usynth/instantiate.hpp"
#include "usynth/recombine.hpp"

namespace usynth {

struct SynthOptions {
  DecomposeConfig decompose;
  std::string backend = "template2q";
  double native_threshold = 1e-8;
  int jobs = 1;
};

struct SynthResult {
  Circuit circuit;
  BlockList blocks;
  double distance = 0.0;  // final circuit vs target
  bool converged = false; // distance <= decompose threshold
};

/// Full pipeline: hierarchical decomposition to the backend's arity,
/// per-block native synthesis, recombination. Never throws on depth-limit;
/// the best-effort circuit is returned with converged = false.
SynthResult synthesize(const CMatrix& target, const Topology& topology,
                       const SynthOptions& opts);

struct FidelityStats {
  double min = 1.0;
  double avg = 1.0;
  int states = 0;
};

/// Output-state fidelity |<psi_T|psi_C>|^2 over all basis states plus
/// `random_states` Haar-random states.
FidelityStats state_fidelity(const Circuit& c, const CMatrix& target,
                             int random_states, uint64_t seed = 0);

}  // namespace usynth
