// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <vector>

#include "usynth/matrix.hpp"

namespace usynth {

enum class GateKind { U3, Cnot };

/// One native gate: U3(theta, phi, lambda) on wire0, or CNOT with control
/// wire0 and target wire1.
struct Gate {
  GateKind kind = GateKind::U3;
  int wire0 = 0;
  int wire1 = -1;
  double theta = 0.0;
  double phi = 0.0;
  double lambda = 0.0;
};

Gate make_u3(int wire, double theta, double phi, double lambda);
Gate make_cnot(int control, int target);

/// Gates in application order: index 0 acts first.
struct Circuit {
  int n = 0;
  std::vector<Gate> gates;
};

/// The single-qubit rotation matrix
///   [[cos(t/2),            -e^{i l} sin(t/2)],
///    [e^{i p} sin(t/2),  e^{i(l+p)} cos(t/2)]].
CMatrix u3_matrix(double theta, double phi, double lambda);

/// Partial derivatives of u3_matrix w.r.t. (theta, phi, lambda).
std::array<CMatrix, 3> u3_matrix_derivatives(double theta, double phi, double lambda);

/// Angles (theta, phi, lambda) with u3_matrix(...) phase-equivalent to the
/// given 2x2 unitary; theta in [0, pi], phi/lambda in (-pi, pi]. Degenerate
/// rotations (sin or cos of theta/2 below 1e-12) fold the free axis into phi.
std::array<double, 3> u3_angles_from_matrix(const CMatrix& u);

/// Wraps to the canonical ranges above; the matrix changes only by a global
/// phase.
Gate canonicalized(const Gate& g);

/// Gate matrix embedded into n wires. `wires` is ordered: wires[0] is the
/// gate's own wire 0 (most significant); entries need not be ascending.
CMatrix embed_gate(const CMatrix& g, const std::vector<int>& wires, int n);

constexpr int kMaxSimulatedWires = 10;

/// Full 2^n unitary of the circuit (dense; n <= 10, else throws
/// std::length_error).
CMatrix circuit_to_unitary(const Circuit& c);

/// Applies the circuit gate by gate to a state vector of length 2^n.
CVector apply_circuit(const Circuit& c, const CVector& state);

struct Metrics {
  int cnot_count = 0;
  int u3_count = 0;
  int depth = 0;         // critical path: gates conflict iff they share a wire
  double parallelism = 0.0;  // (cnot_count + u3_count) / depth, 0 when empty
};

Metrics metrics(const Circuit& c);

}  // namespace usynth
