// SPDX-License-Identifier: Apache-2.0

#include "usynth/pauli.hpp"

#include <array>
#include <stdexcept>
#include <string>

namespace usynth {

void validate_location(const Location& q, int n) {
  if (q.empty()) throw std::invalid_argument("location: empty");
  int prev = -1;
  for (int w : q) {
    if (w < 0 || w >= n) {
      throw std::invalid_argument("location: qubit " + std::to_string(w) +
                                  " out of range for width " + std::to_string(n));
    }
    if (w <= prev) {
      throw std::invalid_argument("location: indices must be ascending and distinct");
    }
    prev = w;
  }
}

namespace {

std::array<CMatrix, 4> single_qubit_paulis() {
  const Complex i(0.0, 1.0);
  std::array<CMatrix, 4> p;
  p[0] = CMatrix::Identity(2, 2);
  p[1] = CMatrix{{0, 1}, {1, 0}};
  p[2] = CMatrix{{0, -i}, {i, 0}};
  p[3] = CMatrix{{1, 0}, {0, -1}};
  return p;
}

std::vector<CMatrix> build_basis(int m) {
  const auto p1 = single_qubit_paulis();
  std::vector<CMatrix> basis;
  const int count = 1 << (2 * m);
  basis.reserve(count);
  for (int idx = 0; idx < count; ++idx) {
    CMatrix s = CMatrix::Identity(1, 1);
    // Most significant base-4 digit = wire 0 = leftmost factor.
    for (int w = 0; w < m; ++w) {
      const int digit = (idx >> (2 * (m - 1 - w))) & 3;
      s = kron(s, p1[digit]);
    }
    basis.push_back(std::move(s));
  }
  return basis;
}

}  // namespace

const std::vector<CMatrix>& pauli_basis(int m) {
  if (m < 1 || m > 4) {
    throw std::invalid_argument("pauli_basis: m must be in [1, 4]");
  }
  static const std::vector<CMatrix> cache[4] = {
      build_basis(1), build_basis(2), build_basis(3), build_basis(4)};
  return cache[m - 1];
}

CMatrix map_pauli(const Location& q, int n, const CMatrix& s) {
  validate_location(q, n);
  const int m = static_cast<int>(q.size());
  const Eigen::Index ds = Eigen::Index(1) << m;
  if (s.rows() != ds || s.cols() != ds) {
    throw std::invalid_argument("map_pauli: operator dim does not match |Q|");
  }

  std::vector<int> rest;
  rest.reserve(n - m);
  for (int w = 0, j = 0; w < n; ++w) {
    if (j < m && q[j] == w) {
      ++j;
    } else {
      rest.push_back(w);
    }
  }

  // Scatter the bits of a local index onto the given wires (wire 0 is the MSB
  // of the full index, local bit 0 is the MSB of the local index).
  auto scatter = [n](long long local, const std::vector<int>& wires) {
    long long out = 0;
    const int k = static_cast<int>(wires.size());
    for (int j = 0; j < k; ++j) {
      const long long bit = (local >> (k - 1 - j)) & 1;
      out |= bit << (n - 1 - wires[j]);
    }
    return out;
  };

  const Eigen::Index dn = Eigen::Index(1) << n;
  const long long rest_count = 1LL << (n - m);
  CMatrix out = CMatrix::Zero(dn, dn);
  for (Eigen::Index i = 0; i < ds; ++i) {
    for (Eigen::Index j = 0; j < ds; ++j) {
      const Complex v = s(i, j);
      if (v == Complex(0.0, 0.0)) continue;
      const long long hi_r = scatter(i, q);
      const long long hi_c = scatter(j, q);
      for (long long rest_bits = 0; rest_bits < rest_count; ++rest_bits) {
        const long long lo = scatter(rest_bits, rest);
        out(hi_r | lo, hi_c | lo) = v;
      }
    }
  }
  return out;
}

CMatrix qubit_permutation(const Location& q, int n) {
  validate_location(q, n);
  const int m = static_cast<int>(q.size());

  // Source wire k -> target wire: block wires (0..m-1) land on Q, the
  // remaining wires keep their relative order on the complement of Q.
  std::vector<int> target(n);
  for (int k = 0; k < m; ++k) target[k] = q[k];
  {
    int k = m;
    for (int w = 0, j = 0; w < n; ++w) {
      if (j < m && q[j] == w) {
        ++j;
      } else {
        target[k++] = w;
      }
    }
  }

  const Eigen::Index dn = Eigen::Index(1) << n;
  CMatrix p = CMatrix::Zero(dn, dn);
  for (Eigen::Index c = 0; c < dn; ++c) {
    long long r = 0;
    for (int k = 0; k < n; ++k) {
      const long long bit = (c >> (n - 1 - k)) & 1;
      r |= bit << (n - 1 - target[k]);
    }
    p(r, c) = 1.0;
  }
  return p;
}

}  // namespace usynth
