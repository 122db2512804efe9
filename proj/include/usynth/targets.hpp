// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>

#include "usynth/circuit.hpp"

namespace usynth {

/// Quantum Fourier transform on n qubits: entries w^{jk} / sqrt(d) with
/// w = exp(2 pi i / d), d = 2^n.
CMatrix qft_matrix(int n);

/// Doubly-controlled X (swaps |110> and |111>).
CMatrix toffoli_matrix();

/// Controlled SWAP (swaps |101> and |110>).
CMatrix fredkin_matrix();

/// Transverse-field Ising step Hamiltonian on an n-qubit chain:
///   H = sum_i ZZ_{i,i+1} + sum_i X_i  (unit couplings).
CMatrix tfim_hamiltonian(int n);

/// k timesteps of TFIM evolution: expm(-i H dt)^k with dt = 0.1.
CMatrix tfim_unitary(int n, int steps);

/// The generator-style reference circuit for the same evolution: per step,
/// CNOT-RZ-CNOT on every chain edge plus RX on every qubit. Gate count grows
/// linearly in the step count.
Circuit tfim_trotter_circuit(int n, int steps);

/// Named benchmark target ("toffoli", "fredkin", "qft3", "qft4",
/// "tfim-<n>-<k>"). Throws std::invalid_argument for unknown names.
CMatrix benchmark_target(const std::string& name);

}  // namespace usynth
