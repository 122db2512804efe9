// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numbers>

#include "usynth/circuit.hpp"
#include "usynth/gate_model.hpp"
#include "usynth/targets.hpp"

using namespace usynth;

TEST_CASE("qft entries are roots of unity over sqrt(d)") {
  const CMatrix u = qft_matrix(3);
  const double norm = 1.0 / std::sqrt(8.0);
  for (int j = 0; j < 8; ++j) {
    for (int k = 0; k < 8; ++k) {
      const Complex want = std::polar(norm, 2.0 * std::numbers::pi * j * k / 8.0);
      CHECK(std::abs(u(j, k) - want) < 1e-15);
    }
  }
  CHECK(is_unitary(u, 1e-12));
}

TEST_CASE("toffoli swaps the last two basis states") {
  const CMatrix u = toffoli_matrix();
  CHECK(u(7, 6) == Complex(1.0, 0.0));
  CHECK(u(6, 7) == Complex(1.0, 0.0));
  CHECK(u(6, 6) == Complex(0.0, 0.0));
  for (int i = 0; i < 6; ++i) CHECK(u(i, i) == Complex(1.0, 0.0));
  CHECK(is_unitary(u, 0.0));
}

TEST_CASE("fredkin swaps |101> and |110>") {
  const CMatrix u = fredkin_matrix();
  CHECK(u(5, 6) == Complex(1.0, 0.0));
  CHECK(u(6, 5) == Complex(1.0, 0.0));
  for (int i : {0, 1, 2, 3, 4, 7}) CHECK(u(i, i) == Complex(1.0, 0.0));
  CHECK(is_unitary(u, 0.0));
}

TEST_CASE("tfim evolution composes like a single longer step") {
  // The step Hamiltonian commutes with itself, so k steps of dt equal one
  // step of k dt; checks the composition path against a single exponential.
  const CMatrix h = tfim_hamiltonian(3);
  CHECK(max_abs_diff(h, h.adjoint()) < 1e-14);
  const CMatrix five = tfim_unitary(3, 5);
  const CMatrix direct = expm(Complex(0.0, -0.5) * h);
  CHECK(max_abs_diff(five, direct) < 1e-12);
  CHECK(is_unitary(five, 1e-11));
}

TEST_CASE("trotter reference circuit grows linearly with steps") {
  for (int k : {1, 5, 10}) {
    const Circuit c = tfim_trotter_circuit(3, k);
    const Metrics m = metrics(c);
    CHECK(m.cnot_count == 4 * k);  // two edges, two CNOTs each per step
    CHECK(m.u3_count == 5 * k);    // two rz plus three rx per step
  }
}

TEST_CASE("trotter circuit approximates the exact evolution at small dt") {
  // One step at dt = 0.1: the splitting error is O(dt^2), far from zero but
  // well under the gross-mismatch level.
  const double d1 = distance(circuit_to_unitary(tfim_trotter_circuit(3, 1)),
                             tfim_unitary(3, 1));
  CHECK(d1 < 5e-3);
  CHECK(d1 > 1e-6);
}

TEST_CASE("benchmark_target dispatch") {
  CHECK(benchmark_target("toffoli").rows() == 8);
  CHECK(benchmark_target("qft4").rows() == 16);
  CHECK(benchmark_target("tfim-3-5").rows() == 8);
  CHECK_THROWS_AS(benchmark_target("mystery"), std::invalid_argument);
  CHECK_THROWS_AS(benchmark_target("tfim-3-0"), std::invalid_argument);
}
