// SPDX-License-Identifier: Apache-2.0

#include "usynth/circuit.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace usynth {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kDegenerate = 1e-12;

/// Wraps x into (-pi, pi].
double wrap_angle(double x) {
  double y = std::fmod(x + kPi, 2.0 * kPi);
  if (y <= 0.0) y += 2.0 * kPi;
  return y - kPi;
}

void check_wire(int w, int n) {
  if (w < 0 || w >= n) throw std::invalid_argument("circuit: wire index out of range");
}

}  // namespace

Gate make_u3(int wire, double theta, double phi, double lambda) {
  Gate g;
  g.kind = GateKind::U3;
  g.wire0 = wire;
  g.theta = theta;
  g.phi = phi;
  g.lambda = lambda;
  return g;
}

Gate make_cnot(int control, int target) {
  if (control == target) throw std::invalid_argument("cnot: control == target");
  Gate g;
  g.kind = GateKind::Cnot;
  g.wire0 = control;
  g.wire1 = target;
  return g;
}

CMatrix u3_matrix(double theta, double phi, double lambda) {
  const double c = std::cos(theta / 2.0);
  const double s = std::sin(theta / 2.0);
  const Complex el = std::polar(1.0, lambda);
  const Complex ep = std::polar(1.0, phi);
  CMatrix u(2, 2);
  u << Complex(c, 0.0), -el * s, ep * s, el * ep * c;
  return u;
}

std::array<CMatrix, 3> u3_matrix_derivatives(double theta, double phi, double lambda) {
  const double c = std::cos(theta / 2.0);
  const double s = std::sin(theta / 2.0);
  const Complex el = std::polar(1.0, lambda);
  const Complex ep = std::polar(1.0, phi);
  const Complex i(0.0, 1.0);

  CMatrix dt(2, 2), dp(2, 2), dl(2, 2);
  dt << Complex(-s / 2.0, 0.0), -el * (c / 2.0), ep * (c / 2.0), -el * ep * (s / 2.0);
  dp << Complex(0.0, 0.0), Complex(0.0, 0.0), i * ep * s, i * el * ep * c;
  dl << Complex(0.0, 0.0), -i * el * s, Complex(0.0, 0.0), i * el * ep * c;
  return {dt, dp, dl};
}

std::array<double, 3> u3_angles_from_matrix(const CMatrix& u) {
  if (u.rows() != 2 || u.cols() != 2) {
    throw std::invalid_argument("u3_angles_from_matrix: expected 2x2");
  }
  const double c = std::abs(u(0, 0));
  const double s = std::abs(u(1, 0));
  const double theta = 2.0 * std::atan2(s, c);

  double phi = 0.0, lambda = 0.0;
  if (s <= kDegenerate) {
    // Diagonal: fold everything into phi.
    const double delta = std::arg(u(0, 0));
    phi = std::arg(u(1, 1)) - delta;
  } else if (c <= kDegenerate) {
    // Anti-diagonal: lambda = 0, phi carries the relative phase.
    const double delta = std::arg(-u(0, 1));
    phi = std::arg(u(1, 0)) - delta;
  } else {
    const double delta = std::arg(u(0, 0));
    phi = std::arg(u(1, 0)) - delta;
    lambda = std::arg(-u(0, 1)) - delta;
  }
  return {theta, wrap_angle(phi), wrap_angle(lambda)};
}

Gate canonicalized(const Gate& g) {
  if (g.kind != GateKind::U3) return g;
  double theta = wrap_angle(g.theta);  // u3(t + 2pi) = -u3(t)
  double phi = g.phi;
  double lambda = g.lambda;
  if (theta < 0.0) {
    theta = -theta;
    phi += kPi;
    lambda += kPi;
  }
  return make_u3(g.wire0, theta, wrap_angle(phi), wrap_angle(lambda));
}

CMatrix embed_gate(const CMatrix& g, const std::vector<int>& wires, int n) {
  const int m = static_cast<int>(wires.size());
  const Eigen::Index dg = Eigen::Index(1) << m;
  if (g.rows() != dg || g.cols() != dg) {
    throw std::invalid_argument("embed_gate: matrix dim does not match wire count");
  }
  for (int w : wires) check_wire(w, n);

  const Eigen::Index dn = Eigen::Index(1) << n;
  CMatrix out = CMatrix::Zero(dn, dn);
  std::vector<int> rest;
  for (int w = 0; w < n; ++w) {
    bool used = false;
    for (int q : wires) used |= (q == w);
    if (!used) rest.push_back(w);
  }
  if (static_cast<int>(rest.size()) + m != n) {
    throw std::invalid_argument("embed_gate: duplicate wires");
  }

  auto scatter = [n](long long local, const std::vector<int>& ws) {
    long long out_bits = 0;
    const int k = static_cast<int>(ws.size());
    for (int j = 0; j < k; ++j) {
      out_bits |= ((local >> (k - 1 - j)) & 1) << (n - 1 - ws[j]);
    }
    return out_bits;
  };

  const long long rest_count = 1LL << rest.size();
  for (Eigen::Index i = 0; i < dg; ++i) {
    for (Eigen::Index j = 0; j < dg; ++j) {
      const Complex v = g(i, j);
      if (v == Complex(0.0, 0.0)) continue;
      const long long hi_r = scatter(i, wires);
      const long long hi_c = scatter(j, wires);
      for (long long bits = 0; bits < rest_count; ++bits) {
        const long long lo = scatter(bits, rest);
        out(hi_r | lo, hi_c | lo) = v;
      }
    }
  }
  return out;
}

namespace {

const CMatrix& cnot_matrix() {
  static const CMatrix cx = [] {
    CMatrix m = CMatrix::Identity(4, 4);
    m(2, 2) = 0.0;
    m(3, 3) = 0.0;
    m(2, 3) = 1.0;
    m(3, 2) = 1.0;
    return m;
  }();
  return cx;
}

}  // namespace

CMatrix circuit_to_unitary(const Circuit& c) {
  if (c.n < 1) throw std::invalid_argument("circuit: empty width");
  if (c.n > kMaxSimulatedWires) {
    throw std::length_error("circuit_to_unitary: width exceeds dense simulation cap");
  }
  const Eigen::Index d = Eigen::Index(1) << c.n;
  CMatrix u = CMatrix::Identity(d, d);
  for (const Gate& g : c.gates) {
    if (g.kind == GateKind::U3) {
      u = embed_gate(u3_matrix(g.theta, g.phi, g.lambda), {g.wire0}, c.n) * u;
    } else {
      u = embed_gate(cnot_matrix(), {g.wire0, g.wire1}, c.n) * u;
    }
  }
  return u;
}

CVector apply_circuit(const Circuit& c, const CVector& state) {
  const Eigen::Index d = Eigen::Index(1) << c.n;
  if (state.size() != d) throw std::invalid_argument("apply_circuit: state length mismatch");
  CVector psi = state;
  for (const Gate& g : c.gates) {
    if (g.kind == GateKind::U3) {
      check_wire(g.wire0, c.n);
      const CMatrix u = u3_matrix(g.theta, g.phi, g.lambda);
      const long long bit = 1LL << (c.n - 1 - g.wire0);
      for (long long i = 0; i < d; ++i) {
        if (i & bit) continue;
        const Complex a0 = psi[i];
        const Complex a1 = psi[i | bit];
        psi[i] = u(0, 0) * a0 + u(0, 1) * a1;
        psi[i | bit] = u(1, 0) * a0 + u(1, 1) * a1;
      }
    } else {
      check_wire(g.wire0, c.n);
      check_wire(g.wire1, c.n);
      const long long cbit = 1LL << (c.n - 1 - g.wire0);
      const long long tbit = 1LL << (c.n - 1 - g.wire1);
      for (long long i = 0; i < d; ++i) {
        if ((i & cbit) && !(i & tbit)) std::swap(psi[i], psi[i | tbit]);
      }
    }
  }
  return psi;
}

Metrics metrics(const Circuit& c) {
  Metrics m;
  std::vector<int> wire_depth(c.n, 0);
  for (const Gate& g : c.gates) {
    check_wire(g.wire0, c.n);
    if (g.kind == GateKind::Cnot) check_wire(g.wire1, c.n);
    if (g.kind == GateKind::U3) {
      ++m.u3_count;
      const int dep = wire_depth[g.wire0] + 1;
      wire_depth[g.wire0] = dep;
      m.depth = std::max(m.depth, dep);
    } else {
      ++m.cnot_count;
      const int dep = std::max(wire_depth[g.wire0], wire_depth[g.wire1]) + 1;
      wire_depth[g.wire0] = dep;
      wire_depth[g.wire1] = dep;
      m.depth = std::max(m.depth, dep);
    }
  }
  const int total = m.cnot_count + m.u3_count;
  m.parallelism = m.depth > 0 ? static_cast<double>(total) / m.depth : 0.0;
  return m;
}

}  // namespace usynth
