// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "testutil.hpp"
#include "usynth/gate_model.hpp"
#include "usynth/pauli.hpp"
#include "usynth/topology.hpp"

using namespace usynth;
namespace tu = usynth::testutil;

namespace {

// Wire-relabeling oracle: builds P_Q directly from its action on basis
// states, independent of the production construction.
CMatrix permutation_oracle(const Location& q, int n) {
  const int m = static_cast<int>(q.size());
  std::vector<int> target(n);
  for (int k = 0; k < m; ++k) target[k] = q[k];
  int at = m;
  for (int w = 0; w < n; ++w) {
    if (std::find(q.begin(), q.end(), w) == q.end()) target[at++] = w;
  }
  const Eigen::Index d = Eigen::Index(1) << n;
  CMatrix p = CMatrix::Zero(d, d);
  for (Eigen::Index c = 0; c < d; ++c) {
    long long r = 0;
    for (int k = 0; k < n; ++k) {
      r |= ((c >> (n - 1 - k)) & 1LL) << (n - 1 - target[k]);
    }
    p(r, c) = 1.0;
  }
  return p;
}

}  // namespace

TEST_CASE("single-qubit basis is I, X, Y, Z") {
  const auto& basis = pauli_basis(1);
  REQUIRE(basis.size() == 4);
  const Complex i(0, 1);
  CMatrix x(2, 2), y(2, 2), z(2, 2);
  x << 0, 1, 1, 0;
  y << 0, -i, i, 0;
  z << 1, 0, 0, -1;
  CHECK(max_abs_diff(basis[0], CMatrix::Identity(2, 2)) == 0.0);
  CHECK(max_abs_diff(basis[1], x) == 0.0);
  CHECK(max_abs_diff(basis[2], y) == 0.0);
  CHECK(max_abs_diff(basis[3], z) == 0.0);
}

TEST_CASE("two-qubit basis has 16 strings of dim 4") {
  const auto& basis = pauli_basis(2);
  REQUIRE(basis.size() == 16);
  for (const CMatrix& s : basis) {
    CHECK(s.rows() == 4);
    CHECK(s.cols() == 4);
  }
}

TEST_CASE("every string is Hermitian and unitary with trace 0 or 2^m") {
  for (int m : {1, 2, 3}) {
    const auto& basis = pauli_basis(m);
    const double dim = static_cast<double>(Eigen::Index(1) << m);
    for (size_t k = 0; k < basis.size(); ++k) {
      CHECK(max_abs_diff(basis[k], basis[k].adjoint()) == 0.0);
      CHECK(is_unitary(basis[k], 1e-14));
      const Complex tr = basis[k].trace();
      if (k == 0) {
        CHECK(tr.real() == doctest::Approx(dim));
      } else {
        CHECK(std::abs(tr) == doctest::Approx(0.0));
      }
    }
  }
}

TEST_CASE("pauli_basis rejects out-of-range sizes") {
  CHECK_THROWS_AS(pauli_basis(0), std::invalid_argument);
  CHECK_THROWS_AS(pauli_basis(5), std::invalid_argument);
}

TEST_CASE("map_pauli inserts identities at unused wires") {
  const auto& b1 = pauli_basis(1);
  const CMatrix& x = b1[1];
  const CMatrix xx = kron(x, x);
  const CMatrix i2 = CMatrix::Identity(2, 2);

  CHECK(max_abs_diff(map_pauli({0, 1}, 3, xx), kron(kron(x, x), i2)) == 0.0);
  CHECK(max_abs_diff(map_pauli({0, 2}, 3, xx), kron(kron(x, i2), x)) == 0.0);
  CHECK(max_abs_diff(map_pauli({0, 1}, 2, xx), xx) == 0.0);
}

TEST_CASE("map_pauli validates its location") {
  const CMatrix xx = kron(pauli_basis(1)[1], pauli_basis(1)[1]);
  CHECK_THROWS_AS(map_pauli({0, 3}, 3, xx), std::invalid_argument);
  CHECK_THROWS_AS(map_pauli({1, 0}, 3, xx), std::invalid_argument);
  CHECK_THROWS_AS(map_pauli({0}, 3, xx), std::invalid_argument);
}

TEST_CASE("map_pauli preserves Hermiticity and unitarity") {
  auto gen = tu::rng(7);
  const auto& basis = pauli_basis(2);
  std::uniform_int_distribution<int> pick(0, 15);
  for (int trial = 0; trial < 20; ++trial) {
    const CMatrix& s = basis[pick(gen)];
    const CMatrix mapped = map_pauli({1, 3}, 4, s);
    CHECK(max_abs_diff(mapped, mapped.adjoint()) == 0.0);
    CHECK(is_unitary(mapped, 1e-14));
  }
}

TEST_CASE("qubit_permutation is the identity for leading wires") {
  CHECK(max_abs_diff(qubit_permutation({0, 1}, 3), CMatrix::Identity(8, 8)) == 0.0);
}

TEST_CASE("qubit_permutation for Q=(1) on two wires is SWAP") {
  CMatrix swap = CMatrix::Identity(4, 4);
  swap(1, 1) = swap(2, 2) = 0.0;
  swap(1, 2) = swap(2, 1) = 1.0;
  CHECK(max_abs_diff(qubit_permutation({1}, 2), swap) == 0.0);
}

TEST_CASE("qubit_permutation matches the wire-relabeling oracle") {
  for (int n : {2, 3, 4}) {
    for (int m = 1; m <= n; ++m) {
      for (const Location& q : locations(Topology::all_to_all(n), m)) {
        CHECK(max_abs_diff(qubit_permutation(q, n), permutation_oracle(q, n)) == 0.0);
      }
    }
  }
}

TEST_CASE("every permutation satisfies P P^T = I exactly") {
  for (int n : {2, 3, 4}) {
    for (const Location& q : locations(Topology::all_to_all(n), 2)) {
      const CMatrix p = qubit_permutation(q, n);
      CHECK(max_abs_diff(p * p.transpose(),
                         CMatrix::Identity(p.rows(), p.cols())) == 0.0);
    }
  }
}

TEST_CASE("permutation model equals the direct Pauli-mapping model") {
  // exp(i a . mapped strings) vs P (exp(i a . strings) (x) I) P^T, swept over
  // every 2-qubit location at n <= 3 with 50 random coefficient vectors each.
  auto gen = tu::rng(99);
  const auto& basis = pauli_basis(2);
  for (int n : {2, 3}) {
    for (const Location& q : locations(Topology::all_to_all(n), 2)) {
      const CMatrix p = qubit_permutation(q, n);
      const Eigen::Index rest = Eigen::Index(1) << (n - 2);
      for (int trial = 0; trial < 50; ++trial) {
        const RVector alpha = tu::random_vector(16, gen, -1.0, 1.0);

        const Eigen::Index dn = Eigen::Index(1) << n;
        CMatrix mapped_sum = CMatrix::Zero(dn, dn);
        CMatrix local_sum = CMatrix::Zero(4, 4);
        for (int k = 0; k < 16; ++k) {
          mapped_sum += alpha[k] * map_pauli(q, n, basis[k]);
          local_sum += alpha[k] * basis[k];
        }
        const CMatrix direct = expm(Complex(0, 1) * mapped_sum);
        const CMatrix via_perm =
            p * kron(expm(Complex(0, 1) * local_sum), CMatrix::Identity(rest, rest)) *
            p.transpose();
        CHECK(max_abs_diff(direct, via_perm) <= 1e-10);
      }
    }
  }
}
