// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "usynth/matrix.hpp"

namespace usynth {

// Wire convention, used consistently by the Pauli maps, the permutation
// matrices, the simulator and the QASM emitter: wire 0 is the MOST
// significant bit of a basis-state index, i.e. the leftmost Kronecker factor.

/// Qubit indices a gate acts on, stored ascending and distinct.
using Location = std::vector<int>;

/// Throws std::invalid_argument unless q is ascending, distinct and all
/// indices lie in [0, n).
void validate_location(const Location& q, int n);

/// The 4^m Pauli strings on m qubits (1 <= m <= 4) in lexicographic
/// {I, X, Y, Z}^m order; index 0 is the identity. Built once per m and
/// shared; the returned reference stays valid for the program lifetime.
const std::vector<CMatrix>& pauli_basis(int m);

/// Embeds an m-qubit operator s into n qubits so that the factor acting on
/// wire q[j] is the j-th factor of s and every other wire gets the identity.
/// For Pauli strings this is exactly the location map on strings.
CMatrix map_pauli(const Location& q, int n, const CMatrix& s);

/// The 2^n x 2^n permutation P_Q with
///   embed(M on Q) = P_Q (M (x) I) P_Q^T
/// for every 2^m x 2^m operator M: it relabels wires so the block moves from
/// wires (0..m-1) to wires Q.
CMatrix qubit_permutation(const Location& q, int n);

}  // namespace usynth
