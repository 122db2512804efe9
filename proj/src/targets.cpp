// SPDX-License-Identifier: Apache-2.0

#include "usynth/targets.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "usynth/pauli.hpp"

namespace usynth {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTfimDt = 0.1;
constexpr double kTfimCoupling = 1.0;
constexpr double kTfimField = 1.0;

}  // namespace

CMatrix qft_matrix(int n) {
  const Eigen::Index d = Eigen::Index(1) << n;
  const double norm = 1.0 / std::sqrt(static_cast<double>(d));
  CMatrix u(d, d);
  for (Eigen::Index j = 0; j < d; ++j) {
    for (Eigen::Index k = 0; k < d; ++k) {
      u(j, k) = std::polar(norm, 2.0 * kPi * static_cast<double>(j * k) / static_cast<double>(d));
    }
  }
  return u;
}

CMatrix toffoli_matrix() {
  CMatrix u = CMatrix::Identity(8, 8);
  u(6, 6) = u(7, 7) = 0.0;
  u(6, 7) = u(7, 6) = 1.0;
  return u;
}

CMatrix fredkin_matrix() {
  CMatrix u = CMatrix::Identity(8, 8);
  u(5, 5) = u(6, 6) = 0.0;
  u(5, 6) = u(6, 5) = 1.0;
  return u;
}

CMatrix tfim_hamiltonian(int n) {
  if (n < 2) throw std::invalid_argument("tfim: need at least 2 qubits");
  const auto& p1 = pauli_basis(1);
  const CMatrix& x = p1[1];
  const CMatrix& z = p1[3];
  const Eigen::Index d = Eigen::Index(1) << n;
  CMatrix h = CMatrix::Zero(d, d);
  for (int i = 0; i + 1 < n; ++i) {
    CMatrix zz = kron(z, z);
    h += kTfimCoupling * map_pauli({i, i + 1}, n, zz);
  }
  for (int i = 0; i < n; ++i) {
    h += kTfimField * map_pauli({i}, n, x);
  }
  return h;
}

CMatrix tfim_unitary(int n, int steps) {
  if (steps < 1) throw std::invalid_argument("tfim: need at least 1 step");
  const CMatrix step = expm(Complex(0.0, -kTfimDt) * tfim_hamiltonian(n));
  const Eigen::Index d = Eigen::Index(1) << n;
  CMatrix u = CMatrix::Identity(d, d);
  for (int k = 0; k < steps; ++k) u = step * u;
  return u;
}

Circuit tfim_trotter_circuit(int n, int steps) {
  Circuit c;
  c.n = n;
  for (int k = 0; k < steps; ++k) {
    for (int i = 0; i + 1 < n; ++i) {
      c.gates.push_back(make_cnot(i, i + 1));
      c.gates.push_back(make_u3(i + 1, 0.0, 0.0, 2.0 * kTfimCoupling * kTfimDt));
      c.gates.push_back(make_cnot(i, i + 1));
    }
    for (int i = 0; i < n; ++i) {
      c.gates.push_back(make_u3(i, 2.0 * kTfimField * kTfimDt, -kPi / 2.0, kPi / 2.0));
    }
  }
  return c;
}

CMatrix benchmark_target(const std::string& name) {
  if (name == "toffoli") return toffoli_matrix();
  if (name == "fredkin") return fredkin_matrix();
  if (name.rfind("qft", 0) == 0) {
    const int n = std::stoi(name.substr(3));
    if (n < 1 || n > kMaxSimulatedWires) throw std::invalid_argument("qft size out of range");
    return qft_matrix(n);
  }
  if (name.rfind("tfim-", 0) == 0) {
    const auto dash = name.find('-', 5);
    if (dash != std::string::npos) {
      const int n = std::stoi(name.substr(5, dash - 5));
      const int steps = std::stoi(name.substr(dash + 1));
      return tfim_unitary(n, steps);
    }
  }
  throw std::invalid_argument("unknown benchmark target '" + name + "'");
}

}  // namespace usynth
