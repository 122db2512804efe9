// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "testutil.hpp"
#include "usynth/pipeline.hpp"
#include "usynth/targets.hpp"

using namespace usynth;
namespace tu = usynth::testutil;

TEST_CASE("two-qubit targets go straight to the native backend") {
  CMatrix cx = CMatrix::Identity(4, 4);
  cx(2, 2) = cx(3, 3) = 0.0;
  cx(2, 3) = cx(3, 2) = 1.0;
  SynthOptions opts;
  const SynthResult res = synthesize(cx, Topology::all_to_all(2), opts);
  CHECK(res.converged);
  CHECK(res.distance <= 1e-8);
  CHECK(metrics(res.circuit).cnot_count == 1);
  CHECK(res.blocks.size() == 1);
}

TEST_CASE("targets narrower than the backend are rejected") {
  SynthOptions opts;
  CHECK_THROWS_AS(synthesize(CMatrix::Identity(2, 2), Topology::all_to_all(1), opts),
                  std::invalid_argument);
}

TEST_CASE("identity target produces an empty circuit") {
  SynthOptions opts;
  const SynthResult res = synthesize(CMatrix::Identity(8, 8), Topology::linear(3), opts);
  CHECK(res.converged);
  CHECK(res.circuit.gates.empty());
  CHECK(res.distance == 0.0);
}

TEST_CASE("depth-capped runs surface as best-effort, not exceptions") {
  SynthOptions opts;
  opts.decompose.max_layers = 1;
  const SynthResult res = synthesize(qft_matrix(3), Topology::all_to_all(3), opts);
  CHECK_FALSE(res.converged);
  CHECK(res.distance > opts.decompose.threshold);
  CHECK(!res.circuit.gates.empty());
}

TEST_CASE("state fidelity is exact for the exact circuit") {
  auto gen = tu::rng(61);
  // A circuit equal to its own target has unit fidelity on every state.
  Circuit c;
  c.n = 2;
  c.gates.push_back(make_cnot(0, 1));
  c.gates.push_back(make_u3(0, 0.3, 0.2, 0.1));
  const CMatrix target = circuit_to_unitary(c);
  const FidelityStats fid = state_fidelity(c, target, 100, 9);
  CHECK(fid.states == 4 + 100);
  CHECK(fid.min >= 1.0 - 1e-12);
  CHECK(fid.avg >= 1.0 - 1e-12);

  // Against a different unitary the fidelity drops.
  const FidelityStats wrong = state_fidelity(c, tu::random_unitary(4, gen), 100, 9);
  CHECK(wrong.avg < 0.999);
}
