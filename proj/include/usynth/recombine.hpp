// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "usynth/circuit.hpp"
#include "usynth/decompose.hpp"

namespace usynth {

/// A single U3 phase-equivalent to applying g1 then g2 (same wire), recovered
/// by ZYZ extraction from the matrix product.
Gate merge_u3(const Gate& g1, const Gate& g2);

/// Runs the two peephole passes to fixpoint:
///   (a) adjacent U3s on the same wire merge into one;
///   (b) adjacent identical CNOT pairs cancel.
/// The unitary is preserved up to global phase; the U3 count never grows.
Circuit peephole_optimize(const Circuit& c);

/// Relabels each subcircuit's wires through its block's location into the
/// n-wire frame, concatenates in block order, and peephole-optimizes the
/// seams.
Circuit recombine(const BlockList& bl, const std::vector<Circuit>& subcircuits);

}  // namespace usynth
