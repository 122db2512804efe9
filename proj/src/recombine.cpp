// SPDX-License-Identifier: Apache-2.0

#include "usynth/recombine.hpp"

#include <stdexcept>

namespace usynth {

Gate merge_u3(const Gate& g1, const Gate& g2) {
  if (g1.kind != GateKind::U3 || g2.kind != GateKind::U3 || g1.wire0 != g2.wire0) {
    throw std::invalid_argument("merge_u3: expected two U3s on the same wire");
  }
  const CMatrix product = u3_matrix(g2.theta, g2.phi, g2.lambda) *
                          u3_matrix(g1.theta, g1.phi, g1.lambda);
  const auto [theta, phi, lambda] = u3_angles_from_matrix(product);
  return make_u3(g1.wire0, theta, phi, lambda);
}

namespace {

// Index of the next gate at or after `from` touching `wire`, or -1.
int next_on_wire(const std::vector<Gate>& gates, size_t from, int wire) {
  for (size_t j = from; j < gates.size(); ++j) {
    const Gate& g = gates[j];
    if (g.wire0 == wire || (g.kind == GateKind::Cnot && g.wire1 == wire)) {
      return static_cast<int>(j);
    }
  }
  return -1;
}

bool pass_once(std::vector<Gate>& gates) {
  for (size_t i = 0; i < gates.size(); ++i) {
    const Gate& g = gates[i];
    if (g.kind == GateKind::U3) {
      const int j = next_on_wire(gates, i + 1, g.wire0);
      if (j >= 0 && gates[j].kind == GateKind::U3) {
        gates[i] = merge_u3(g, gates[j]);
        gates.erase(gates.begin() + j);
        return true;
      }
    } else {
      const int jc = next_on_wire(gates, i + 1, g.wire0);
      const int jt = next_on_wire(gates, i + 1, g.wire1);
      if (jc >= 0 && jc == jt && gates[jc].kind == GateKind::Cnot &&
          gates[jc].wire0 == g.wire0 && gates[jc].wire1 == g.wire1) {
        gates.erase(gates.begin() + jc);
        gates.erase(gates.begin() + i);
        return true;
      }
    }
  }
  return false;
}

}  // namespace

Circuit peephole_optimize(const Circuit& c) {
  Circuit out = c;
  while (pass_once(out.gates)) {
  }
  return out;
}

Circuit recombine(const BlockList& bl, const std::vector<Circuit>& subcircuits) {
  if (bl.blocks.size() != subcircuits.size()) {
    throw std::invalid_argument("recombine: one subcircuit per block required");
  }
  Circuit out;
  out.n = bl.n;
  for (size_t i = 0; i < subcircuits.size(); ++i) {
    const Location& loc = bl.blocks[i].first;
    const Circuit& sub = subcircuits[i];
    if (sub.n != static_cast<int>(loc.size())) {
      throw std::invalid_argument("recombine: subcircuit " + std::to_string(i) +
                                  " width does not match its block location");
    }
    for (Gate g : sub.gates) {
      g.wire0 = loc[g.wire0];
      if (g.kind == GateKind::Cnot) g.wire1 = loc[g.wire1];
      out.gates.push_back(g);
    }
  }
  return peephole_optimize(out);
}

}  // namespace usynth
