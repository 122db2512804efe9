// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <utility>
#include <variant>
#include <vector>

#include "usynth/pauli.hpp"

namespace usynth {

/// A generic m-qubit gate G(alpha) = exp(i alpha . sigma), parameterized by
/// one real coefficient per m-qubit Pauli string (4^m of them).
struct GateFunction {
  int m = 1;
  RVector alpha;  // length 4^m

  int parameter_count() const { return 1 << (2 * m); }
};

/// A generic gate bound to one location on an n-wire circuit.
struct FixedBlock {
  GateFunction fn;
  Location location;
  int n = 0;
};

/// A generic gate multiplexed over candidate locations; the logits l pick the
/// location through a softmax over the candidate permutation matrices.
struct VariableBlock {
  GateFunction fn;
  std::vector<Location> candidates;
  RVector logits;  // length |candidates|
  int n = 0;
};

using Block = std::variant<FixedBlock, VariableBlock>;

/// Numerically stable softmax (max-subtracted).
RVector softmax(const RVector& l);

/// Index of the largest logit (first on ties).
int argmax(const RVector& l);

CMatrix gate_unitary(const GateFunction& fn);

/// F(Q, alpha) = P_Q (G(alpha) (x) I) P_Q^T. Always unitary.
CMatrix fixed_unitary(const FixedBlock& b);

/// V(Q, alpha, l) = (sum_q s_q P_q)(G (x) I)(sum_q s_q P_q^T), s = softmax(l).
/// Not unitary in general; converges to fixed_unitary at the argmax location
/// as the softmax sharpens.
CMatrix variable_unitary(const VariableBlock& b);

/// Width and unitary of either block kind.
int block_width(const Block& b);
CMatrix block_unitary(const Block& b);

/// U = M_{k-1} ... M_1 M_0: element 0 is applied first in circuit time.
CMatrix circuit_product(const std::vector<CMatrix>& blocks, int n);

/// Global-phase-tolerant Hilbert-Schmidt distance
///   D(U_C, U_T) = 1 - |Tr(U_T^dag U_C)| / d,  in [0, 1].
/// This is the optimization objective.
double distance(const CMatrix& uc, const CMatrix& ut);

/// Phase-sensitive variant 1 - Re(Tr(U_T^dag U_C)) / d, in [0, 2].
/// Diagnostic only.
double distance_frobenius(const CMatrix& uc, const CMatrix& ut);

/// Total parameter count: 4^m per block plus |candidates| per variable block.
int parameter_count(const std::vector<Block>& blocks);

/// Flat parameter vector: per block, alpha then (for variable blocks) logits,
/// in block order.
RVector pack_parameters(const std::vector<Block>& blocks);
void set_parameters(std::vector<Block>& blocks, const RVector& params);

/// Distance objective over a block sequence with its analytic gradient.
/// Structure (widths, locations, candidate sets) is fixed at construction;
/// evaluate() is pure and safe to call concurrently.
class CircuitObjective {
 public:
  CircuitObjective(std::vector<Block> blocks, CMatrix target);

  int parameter_count() const { return param_count_; }
  RVector parameters() const { return pack_parameters(blocks_); }

  /// Objective value and gradient w.r.t. the packed parameters.
  std::pair<double, RVector> operator()(const RVector& params) const;

  /// Objective value only (no derivative work).
  double value(const RVector& params) const;

  /// The block sequence with the given parameters substituted in.
  std::vector<Block> with_parameters(const RVector& params) const;

 private:
  std::vector<Block> blocks_;
  CMatrix target_adj_;  // U_T^dag
  int n_ = 0;
  int param_count_ = 0;
  // Cached per block: the permutation matrix (fixed) or all candidate
  // permutations (variable).
  std::vector<std::vector<CMatrix>> perms_;
};

/// One-shot form: D(circuit_product(...), U_T) and its gradient with respect
/// to the packed parameters of `blocks`.
std::pair<double, RVector> objective_and_gradient(const std::vector<Block>& blocks,
                                                  const CMatrix& target);

}  // namespace usynth
