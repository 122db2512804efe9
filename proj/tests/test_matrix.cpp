// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numbers>

#include "testutil.hpp"
#include "usynth/matrix.hpp"

using namespace usynth;
namespace tu = usynth::testutil;

TEST_CASE("expm of the zero matrix is the identity") {
  const CMatrix z = CMatrix::Zero(4, 4);
  CHECK(max_abs_diff(expm(z), CMatrix::Identity(4, 4)) < 1e-15);
}

TEST_CASE("expm of i*pi*X is -I") {
  CMatrix x(2, 2);
  x << 0, 1, 1, 0;
  const CMatrix got = expm(Complex(0.0, std::numbers::pi) * x);
  CHECK(max_abs_diff(got, -CMatrix::Identity(2, 2)) < 1e-13);
}

TEST_CASE("expm matches the truncated Taylor series on random skew-Hermitian input") {
  auto gen = tu::rng(11);
  for (int trial = 0; trial < 5; ++trial) {
    const CMatrix a = tu::random_skew_hermitian(8, gen);
    CHECK(max_abs_diff(expm(a), tu::taylor_expm(a, 40)) < 1e-10);
  }
}

TEST_CASE("expm of skew-Hermitian input is unitary") {
  auto gen = tu::rng(12);
  for (Eigen::Index d : {2, 4, 8, 16}) {
    const CMatrix a = tu::random_skew_hermitian(d, gen);
    CHECK(is_unitary(expm(a), 1e-10));
  }
}

TEST_CASE("expm(A) expm(-A) = I up to norm 10") {
  auto gen = tu::rng(13);
  for (int trial = 0; trial < 5; ++trial) {
    CMatrix a = tu::random_complex(6, gen);
    a *= 10.0 / (a.cwiseAbs().maxCoeff() * 6.0);  // keep the norm moderate
    CHECK(max_abs_diff(expm(a) * expm(-a), CMatrix::Identity(6, 6)) < 1e-10);
  }
}

TEST_CASE("expm rejects bad input") {
  CHECK_THROWS_AS(expm(CMatrix::Zero(2, 3)), std::invalid_argument);
  CMatrix bad = CMatrix::Zero(2, 2);
  bad(0, 0) = Complex(std::nan(""), 0.0);
  CHECK_THROWS_AS(expm(bad), std::invalid_argument);
}

TEST_CASE("expm_frechet at A = 0 returns the direction") {
  auto gen = tu::rng(21);
  const CMatrix e = tu::random_complex(4, gen);
  CHECK(max_abs_diff(expm_frechet(CMatrix::Zero(4, 4), e), e) < 1e-13);
}

TEST_CASE("expm_frechet with commuting diagonal inputs is E exp(A)") {
  CMatrix a = CMatrix::Zero(3, 3);
  a.diagonal() << Complex(0.3, 0.1), Complex(-0.2, 0.5), Complex(0.0, -1.0);
  CMatrix e = CMatrix::Zero(3, 3);
  e.diagonal() << Complex(1.0, 0.0), Complex(0.0, 2.0), Complex(-0.5, 0.5);
  CHECK(max_abs_diff(expm_frechet(a, e), e * expm(a)) < 1e-13);
}

TEST_CASE("expm_frechet matches central finite differences") {
  auto gen = tu::rng(22);
  const double h = 1e-6;
  for (Eigen::Index d : {2, 4, 8, 16}) {
    for (int trial = 0; trial < 25; ++trial) {
      const CMatrix a = tu::random_skew_hermitian(d, gen);
      const CMatrix e = tu::random_skew_hermitian(d, gen);
      const CMatrix got = expm_frechet(a, e);
      const CMatrix fd = (expm(a + h * e) - expm(a - h * e)) / (2.0 * h);
      CHECK(max_abs_diff(got, fd) / max_abs(fd) <= 1e-5);
    }
  }
}

TEST_CASE("expm_frechet rejects mismatched dimensions") {
  CHECK_THROWS_AS(expm_frechet(CMatrix::Zero(2, 2), CMatrix::Zero(3, 3)),
                  std::invalid_argument);
}

TEST_CASE("kron identity and anti-diagonal cases") {
  const CMatrix i2 = CMatrix::Identity(2, 2);
  CHECK(max_abs_diff(kron(i2, i2), CMatrix::Identity(4, 4)) == 0.0);

  CMatrix x(2, 2);
  x << 0, 1, 1, 0;
  const CMatrix xx = kron(x, x);
  CMatrix expected = CMatrix::Zero(4, 4);
  expected(0, 3) = expected(1, 2) = expected(2, 1) = expected(3, 0) = 1.0;
  CHECK(max_abs_diff(xx, expected) == 0.0);
}

TEST_CASE("kron satisfies the mixed-product identity") {
  auto gen = tu::rng(31);
  const CMatrix a = tu::random_complex(2, gen);
  const CMatrix b = tu::random_complex(2, gen);
  const CMatrix c = tu::random_complex(2, gen);
  const CMatrix d = tu::random_complex(2, gen);
  CHECK(max_abs_diff(kron(a, b) * kron(c, d), kron(a * c, b * d)) <= 1e-12);
}

TEST_CASE("kron is associative on exact binary inputs") {
  CMatrix a(2, 2), b(2, 2), c(2, 2);
  a << 1, 0.5, -0.25, 2;
  b << 0, 1, 1, 0;
  c << 0.125, 0, 0, -4;
  CHECK(max_abs_diff(kron(kron(a, b), c), kron(a, kron(b, c))) == 0.0);
}

TEST_CASE("is_unitary examples") {
  CHECK(is_unitary(CMatrix::Identity(8, 8), 1e-12));
  CHECK_FALSE(is_unitary(2.0 * CMatrix::Identity(2, 2), 1e-12));

  auto gen = tu::rng(41);
  const CMatrix h = tu::random_hermitian(4, gen);
  CHECK(is_unitary(expm(Complex(0.0, 1.0) * h), 1e-10));
}
