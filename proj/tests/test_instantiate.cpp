// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numbers>

#include "testutil.hpp"
#include "usynth/gate_model.hpp"
#include "usynth/instantiate.hpp"
#include "usynth/qasm.hpp"

using namespace usynth;
namespace tu = usynth::testutil;

namespace {

const CMatrix& cnot_matrix() {
  static const CMatrix cx = [] {
    CMatrix m = CMatrix::Identity(4, 4);
    m(2, 2) = m(3, 3) = 0.0;
    m(2, 3) = m(3, 2) = 1.0;
    return m;
  }();
  return cx;
}

CMatrix swap_matrix() {
  CMatrix m = CMatrix::Identity(4, 4);
  m(1, 1) = m(2, 2) = 0.0;
  m(1, 2) = m(2, 1) = 1.0;
  return m;
}

// A k-CNOT template circuit with random single-qubit gates, used to check
// the backend never spends more CNOTs than the construction.
Circuit random_template_circuit(int cnots, std::mt19937_64& gen) {
  std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
  Circuit c;
  c.n = 2;
  auto u3_pair = [&] {
    c.gates.push_back(make_u3(0, angle(gen), angle(gen), angle(gen)));
    c.gates.push_back(make_u3(1, angle(gen), angle(gen), angle(gen)));
  };
  u3_pair();
  for (int k = 0; k < cnots; ++k) {
    c.gates.push_back(make_cnot(0, 1));
    u3_pair();
  }
  return c;
}

}  // namespace

TEST_CASE("identity needs no CNOTs") {
  Template2QBackend backend;
  const Circuit c = backend.synthesize(CMatrix::Identity(4, 4), 1e-8, 1);
  CHECK(metrics(c).cnot_count == 0);
  CHECK(distance(circuit_to_unitary(c), CMatrix::Identity(4, 4)) <= 1e-8);
}

TEST_CASE("CNOT instantiates with exactly one CNOT") {
  Template2QBackend backend;
  const Circuit c = backend.synthesize(cnot_matrix(), 1e-8, 2);
  CHECK(metrics(c).cnot_count == 1);
  CHECK(distance(circuit_to_unitary(c), cnot_matrix()) <= 1e-8);
}

TEST_CASE("SWAP saturates the three-CNOT bound") {
  Template2QBackend backend;
  const Circuit c = backend.synthesize(swap_matrix(), 1e-8, 3);
  CHECK(metrics(c).cnot_count == 3);
  CHECK(distance(circuit_to_unitary(c), swap_matrix()) <= 1e-8);
}

TEST_CASE("random unitaries fit within three CNOTs") {
  auto gen = tu::rng(11);
  Template2QBackend backend;
  for (int trial = 0; trial < 10; ++trial) {
    const CMatrix u = tu::random_unitary(4, gen);
    const Circuit c = backend.synthesize(u, 1e-8, trial);
    CHECK(metrics(c).cnot_count <= 3);
    CHECK(distance(circuit_to_unitary(c), u) <= 1e-8);
    for (const Gate& g : c.gates) {
      if (g.kind == GateKind::U3) {
        CHECK(g.theta >= 0.0);
        CHECK(g.theta <= std::numbers::pi);
      }
    }
  }
}

TEST_CASE("backend never spends more CNOTs than the target construction") {
  auto gen = tu::rng(12);
  Template2QBackend backend;
  for (int cnots = 0; cnots <= 3; ++cnots) {
    for (int trial = 0; trial < 3; ++trial) {
      const Circuit made = random_template_circuit(cnots, gen);
      const CMatrix u = circuit_to_unitary(made);
      const Circuit got = backend.synthesize(u, 1e-8, 100 + trial);
      CHECK(metrics(got).cnot_count <= cnots);
      CHECK(distance(circuit_to_unitary(got), u) <= 1e-8);
    }
  }
}

TEST_CASE("non-unitary input is rejected") {
  Template2QBackend backend;
  CHECK_THROWS_AS(backend.synthesize(2.0 * CMatrix::Identity(4, 4), 1e-8, 0),
                  std::invalid_argument);
  CHECK_THROWS_AS(backend.synthesize(CMatrix::Identity(8, 8), 1e-8, 0),
                  std::invalid_argument);
}

TEST_CASE("backend registry") {
  CHECK(make_backend("template2q")->arity() == 2);
  CHECK_THROWS_AS(make_backend("nope"), std::invalid_argument);
}

TEST_CASE("instantiate_blocks maps blocks in order") {
  BlockList empty;
  empty.n = 3;
  Template2QBackend backend;
  CHECK(instantiate_blocks(empty, backend, 1e-8).empty());

  auto gen = tu::rng(13);
  BlockList bl;
  bl.n = 3;
  bl.blocks.emplace_back(Location{0, 1}, CMatrix::Identity(4, 4));
  bl.blocks.emplace_back(Location{1, 2}, tu::random_unitary(4, gen));
  bl.blocks.emplace_back(Location{0, 2}, cnot_matrix());
  const auto circuits = instantiate_blocks(bl, backend, 1e-8, 5);
  REQUIRE(circuits.size() == 3);
  CHECK(metrics(circuits[0]).cnot_count == 0);
  for (size_t i = 0; i < circuits.size(); ++i) {
    CHECK(circuits[i].n == 2);
    CHECK(distance(circuit_to_unitary(circuits[i]), bl.blocks[i].second) <= 1e-8);
  }

  // Parallel fan-out gives the same circuits as the sequential path.
  const auto parallel = instantiate_blocks(bl, backend, 1e-8, 5, 3);
  REQUIRE(parallel.size() == circuits.size());
  for (size_t i = 0; i < circuits.size(); ++i) {
    CHECK(emit_qasm(parallel[i]) == emit_qasm(circuits[i]));
  }
}

TEST_CASE("arity mismatches are reported with the block index") {
  BlockList bl;
  bl.n = 3;
  bl.blocks.emplace_back(Location{0, 1, 2}, CMatrix::Identity(8, 8));
  Template2QBackend backend;
  try {
    instantiate_blocks(bl, backend, 1e-8);
    FAIL("expected invalid_argument");
  } catch (const std::invalid_argument& err) {
    CHECK(std::string(err.what()).find("block 0") != std::string::npos);
  }
}
