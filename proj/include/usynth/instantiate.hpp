// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "usynth/circuit.hpp"
#include "usynth/decompose.hpp"

namespace usynth {

struct SynthesisFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Converts one block unitary into native gates. Implementations must be pure
/// given the seed so blocks can be processed in parallel.
class SynthesisBackend {
 public:
  virtual ~SynthesisBackend() = default;
  virtual int arity() const = 0;
  /// Returns a circuit on `arity()` wires whose unitary is within `threshold`
  /// (phase-tolerant distance) of u. Throws SynthesisFailure otherwise.
  virtual Circuit synthesize(const CMatrix& u, double threshold, uint64_t seed) const = 0;
};

/// Two-qubit backend: exhaustive template search over k = 0..3 CNOTs, each
/// template being a U3 pair followed by k repetitions of [CNOT(0,1), U3
/// pair], with the parameters fit by L-BFGS (8 random restarts per template,
/// escalating to 32 when nothing converges). Returns the smallest k that
/// reaches the threshold; three CNOTs always suffice for a 2-qubit unitary.
class Template2QBackend : public SynthesisBackend {
 public:
  explicit Template2QBackend(int restarts = 8, int escalated_restarts = 32)
      : restarts_(restarts), escalated_restarts_(escalated_restarts) {}
  int arity() const override { return 2; }
  Circuit synthesize(const CMatrix& u, double threshold, uint64_t seed) const override;

 private:
  int restarts_;
  int escalated_restarts_;
};

/// Known backends by CLI name ("template2q"). Throws std::invalid_argument
/// for unknown names.
std::unique_ptr<SynthesisBackend> make_backend(const std::string& name);

/// Synthesizes every block (order preserved), deriving a per-block seed from
/// (seed, index). `jobs` > 1 fans the independent blocks out to a thread
/// pool; results are merged by index. Backend failures are rethrown with the
/// block index attached.
std::vector<Circuit> instantiate_blocks(const BlockList& blocks,
                                        const SynthesisBackend& backend,
                                        double threshold, uint64_t seed = 0,
                                        int jobs = 1);

}  // namespace usynth
