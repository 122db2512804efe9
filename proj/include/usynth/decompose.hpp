// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "usynth/gate_model.hpp"
#include "usynth/minimize.hpp"
#include "usynth/topology.hpp"

namespace usynth {

struct DecomposeConfig {
  int block_size = 2;         // m, the generic block width
  double threshold = 1e-3;    // convergence threshold on the distance
  int max_layers = 64;
  int restarts_per_layer = 1;
  double plateau_slack = 1e-3;  // relative to the previous layer's distance
  double plateau_floor = 1e-6;  // absolute floor on the slack
  uint64_t seed = 0;
  MinimizeOptions solver;
};

/// Result of decomposition: one (location, 2^m unitary) per layer, in
/// application order.
struct BlockList {
  std::vector<std::pair<Location, CMatrix>> blocks;
  int n = 0;
  double achieved_distance = 0.0;
  std::vector<double> layer_distances;  // accepted distance after each layer

  bool empty() const { return blocks.empty(); }
  size_t size() const { return blocks.size(); }
};

/// Thrown when max_layers is reached before hitting the threshold; `best`
/// carries the deepest list built.
struct DepthLimitError : std::runtime_error {
  DepthLimitError(const std::string& what, BlockList best_list)
      : std::runtime_error(what), best(std::move(best_list)) {}
  BlockList best;
};

/// Recomposes the list into a full-width unitary (product of embedded
/// blocks, element 0 applied first).
CMatrix recompose(const BlockList& bl);

/// Grows a circuit of generic m-qubit blocks layer by layer until the
/// distance to `target` drops below cfg.threshold. Each new layer starts as a
/// variable-location gate over locations(t, m); one optimization pass fixes
/// its location (argmax of the softmax weights) and a second polishes all
/// gate functions. A layer whose distance regresses past the previous layer's
/// by more than the plateau slack is retried with the chosen location removed
/// from the candidates.
BlockList decompose(const CMatrix& target, const Topology& t, const DecomposeConfig& cfg);

/// decompose, then recursively re-decompose every block wider than
/// native_size (using the induced coupling subgraph inside the block) until
/// all blocks span at most native_size qubits.
BlockList decompose_hierarchical(const CMatrix& target, const Topology& t,
                                 const DecomposeConfig& cfg, int native_size);

/// Deterministic stream splitter for per-(layer, attempt, restart) RNG seeds.
uint64_t derive_seed(uint64_t seed, uint64_t a, uint64_t b = 0, uint64_t c = 0);

}  // namespace usynth
