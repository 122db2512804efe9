// SPDX-License-Identifier: Apache-2.0

#include "usynth/gate_model.hpp"

#include <cmath>
#include <stdexcept>

namespace usynth {

RVector softmax(const RVector& l) {
  if (l.size() == 0) throw std::invalid_argument("softmax: empty input");
  const double shift = l.maxCoeff();
  RVector s = (l.array() - shift).exp();
  s /= s.sum();
  return s;
}

int argmax(const RVector& l) {
  Eigen::Index best = 0;
  l.maxCoeff(&best);
  return static_cast<int>(best);
}

namespace {

void validate_gate_function(const GateFunction& fn) {
  if (fn.m < 1 || fn.m > 4) throw std::invalid_argument("gate function: m out of range");
  if (fn.alpha.size() != fn.parameter_count()) {
    throw std::invalid_argument("gate function: alpha length must be 4^m");
  }
  if (!fn.alpha.allFinite()) throw std::invalid_argument("gate function: non-finite alpha");
}

// Hermitian generator H = sum_k alpha_k sigma_k.
CMatrix generator(const GateFunction& fn) {
  const auto& basis = pauli_basis(fn.m);
  const Eigen::Index d = Eigen::Index(1) << fn.m;
  CMatrix h = CMatrix::Zero(d, d);
  for (int k = 0; k < fn.parameter_count(); ++k) {
    if (fn.alpha[k] != 0.0) h += fn.alpha[k] * basis[k];
  }
  return h;
}

CMatrix padded(const CMatrix& g, int n, int m) {
  if (n == m) return g;
  const Eigen::Index rest = Eigen::Index(1) << (n - m);
  return kron(g, CMatrix::Identity(rest, rest));
}

}  // namespace

CMatrix gate_unitary(const GateFunction& fn) {
  validate_gate_function(fn);
  return expm(Complex(0.0, 1.0) * generator(fn));
}

CMatrix fixed_unitary(const FixedBlock& b) {
  validate_location(b.location, b.n);
  if (static_cast<int>(b.location.size()) != b.fn.m) {
    throw std::invalid_argument("fixed block: |location| != m");
  }
  const CMatrix p = qubit_permutation(b.location, b.n);
  return p * padded(gate_unitary(b.fn), b.n, b.fn.m) * p.transpose();
}

CMatrix variable_unitary(const VariableBlock& b) {
  if (b.candidates.empty()) throw std::invalid_argument("variable block: no candidates");
  if (b.logits.size() != static_cast<Eigen::Index>(b.candidates.size())) {
    throw std::invalid_argument("variable block: |logits| != |candidates|");
  }
  const Eigen::Index d = Eigen::Index(1) << b.n;
  const RVector s = softmax(b.logits);
  CMatrix mix = CMatrix::Zero(d, d);
  for (size_t q = 0; q < b.candidates.size(); ++q) {
    validate_location(b.candidates[q], b.n);
    if (static_cast<int>(b.candidates[q].size()) != b.fn.m) {
      throw std::invalid_argument("variable block: candidate size != m");
    }
    mix += s[static_cast<Eigen::Index>(q)] * qubit_permutation(b.candidates[q], b.n);
  }
  return mix * padded(gate_unitary(b.fn), b.n, b.fn.m) * mix.transpose();
}

int block_width(const Block& b) {
  return std::visit([](const auto& blk) { return blk.n; }, b);
}

CMatrix block_unitary(const Block& b) {
  if (std::holds_alternative<FixedBlock>(b)) return fixed_unitary(std::get<FixedBlock>(b));
  return variable_unitary(std::get<VariableBlock>(b));
}

CMatrix circuit_product(const std::vector<CMatrix>& blocks, int n) {
  const Eigen::Index d = Eigen::Index(1) << n;
  CMatrix u = CMatrix::Identity(d, d);
  for (const CMatrix& mat : blocks) {
    if (mat.rows() != d || mat.cols() != d) {
      throw std::invalid_argument("circuit_product: block dimension mismatch");
    }
    u = mat * u;
  }
  return u;
}

double distance(const CMatrix& uc, const CMatrix& ut) {
  if (uc.rows() != ut.rows() || uc.cols() != ut.cols() || uc.rows() != uc.cols()) {
    throw std::invalid_argument("distance: dimension mismatch");
  }
  const double d = static_cast<double>(uc.rows());
  const Complex tr = (ut.adjoint() * uc).trace();
  // |tr| <= d for unitary inputs; rounding can push the ratio past 1.
  return std::max(0.0, 1.0 - std::abs(tr) / d);
}

double distance_frobenius(const CMatrix& uc, const CMatrix& ut) {
  if (uc.rows() != ut.rows() || uc.cols() != ut.cols() || uc.rows() != uc.cols()) {
    throw std::invalid_argument("distance_frobenius: dimension mismatch");
  }
  const double d = static_cast<double>(uc.rows());
  const Complex tr = (ut.adjoint() * uc).trace();
  return 1.0 - tr.real() / d;
}

int parameter_count(const std::vector<Block>& blocks) {
  int count = 0;
  for (const Block& b : blocks) {
    std::visit(
        [&count](const auto& blk) {
          count += blk.fn.parameter_count();
          if constexpr (std::is_same_v<std::decay_t<decltype(blk)>, VariableBlock>) {
            count += static_cast<int>(blk.candidates.size());
          }
        },
        b);
  }
  return count;
}

RVector pack_parameters(const std::vector<Block>& blocks) {
  RVector out(parameter_count(blocks));
  Eigen::Index at = 0;
  for (const Block& b : blocks) {
    if (const auto* fixed = std::get_if<FixedBlock>(&b)) {
      out.segment(at, fixed->fn.alpha.size()) = fixed->fn.alpha;
      at += fixed->fn.alpha.size();
    } else {
      const auto& var = std::get<VariableBlock>(b);
      out.segment(at, var.fn.alpha.size()) = var.fn.alpha;
      at += var.fn.alpha.size();
      out.segment(at, var.logits.size()) = var.logits;
      at += var.logits.size();
    }
  }
  return out;
}

void set_parameters(std::vector<Block>& blocks, const RVector& params) {
  if (params.size() != parameter_count(blocks)) {
    throw std::invalid_argument("set_parameters: length mismatch");
  }
  Eigen::Index at = 0;
  for (Block& b : blocks) {
    if (auto* fixed = std::get_if<FixedBlock>(&b)) {
      fixed->fn.alpha = params.segment(at, fixed->fn.alpha.size());
      at += fixed->fn.alpha.size();
    } else {
      auto& var = std::get<VariableBlock>(b);
      var.fn.alpha = params.segment(at, var.fn.alpha.size());
      at += var.fn.alpha.size();
      var.logits = params.segment(at, var.logits.size());
      at += var.logits.size();
    }
  }
}

CircuitObjective::CircuitObjective(std::vector<Block> blocks, CMatrix target)
    : blocks_(std::move(blocks)) {
  if (blocks_.empty()) throw std::invalid_argument("objective: no blocks");
  n_ = block_width(blocks_.front());
  const Eigen::Index d = Eigen::Index(1) << n_;
  if (target.rows() != d || target.cols() != d) {
    throw std::invalid_argument("objective: target dimension mismatch");
  }
  for (const Block& b : blocks_) {
    if (block_width(b) != n_) throw std::invalid_argument("objective: mixed widths");
  }
  target_adj_ = target.adjoint();
  param_count_ = usynth::parameter_count(blocks_);
  perms_.reserve(blocks_.size());
  for (const Block& b : blocks_) {
    std::vector<CMatrix> ps;
    if (const auto* fixed = std::get_if<FixedBlock>(&b)) {
      ps.push_back(qubit_permutation(fixed->location, n_));
    } else {
      for (const Location& q : std::get<VariableBlock>(b).candidates) {
        ps.push_back(qubit_permutation(q, n_));
      }
    }
    perms_.push_back(std::move(ps));
  }
}

std::vector<Block> CircuitObjective::with_parameters(const RVector& params) const {
  std::vector<Block> out = blocks_;
  set_parameters(out, params);
  return out;
}

double CircuitObjective::value(const RVector& params) const {
  const std::vector<Block> blocks = with_parameters(params);
  std::vector<CMatrix> mats;
  mats.reserve(blocks.size());
  for (const Block& b : blocks) mats.push_back(block_unitary(b));
  return distance(circuit_product(mats, n_), target_adj_.adjoint());
}

std::pair<double, RVector> CircuitObjective::operator()(const RVector& params) const {
  const std::vector<Block> blocks = with_parameters(params);
  const size_t count = blocks.size();
  const Eigen::Index d = Eigen::Index(1) << n_;
  const Complex imag_unit(0.0, 1.0);

  // Per-block pieces reused by the gradient. The generator is Hermitian, so
  // G and the exact derivative of the exponential both come from one
  // eigendecomposition per block (divided-difference form); this is far
  // cheaper than an augmented exponential per Pauli direction.
  std::vector<CMatrix> gates(count);   // G(alpha), gate-sized
  std::vector<CMatrix> eigvecs(count);
  std::vector<RVector> eigvals(count);
  std::vector<CMatrix> mixes(count);   // P (fixed) or sum_q s_q P_q (variable)
  std::vector<RVector> softs(count);   // softmax(l) for variable blocks
  std::vector<CMatrix> mats(count);    // full-width block matrices
  for (size_t j = 0; j < count; ++j) {
    const GateFunction& fn = std::visit(
        [](const auto& blk) -> const GateFunction& { return blk.fn; }, blocks[j]);
    validate_gate_function(fn);
    Eigen::SelfAdjointEigenSolver<CMatrix> eig(generator(fn));
    eigvals[j] = eig.eigenvalues();
    eigvecs[j] = eig.eigenvectors();
    const CVector phase = (imag_unit * eigvals[j].array().cast<Complex>()).exp();
    gates[j] = eigvecs[j] * phase.asDiagonal() * eigvecs[j].adjoint();

    if (std::holds_alternative<FixedBlock>(blocks[j])) {
      mixes[j] = perms_[j][0];
    } else {
      const auto& var = std::get<VariableBlock>(blocks[j]);
      softs[j] = softmax(var.logits);
      CMatrix mix = CMatrix::Zero(d, d);
      for (size_t q = 0; q < perms_[j].size(); ++q) mix += softs[j][q] * perms_[j][q];
      mixes[j] = mix;
    }
    mats[j] = mixes[j] * padded(gates[j], n_, fn.m) * mixes[j].transpose();
  }

  // pre[j] = M_{j-1} ... M_0, suf[j] = M_{k-1} ... M_j.
  std::vector<CMatrix> pre(count + 1), suf(count + 1);
  pre[0] = CMatrix::Identity(d, d);
  for (size_t j = 0; j < count; ++j) pre[j + 1] = mats[j] * pre[j];
  suf[count] = CMatrix::Identity(d, d);
  for (size_t j = count; j-- > 0;) suf[j] = suf[j + 1] * mats[j];

  const Complex tr = (target_adj_ * pre[count]).trace();
  const double abs_tr = std::abs(tr);
  const double f = 1.0 - abs_tr / static_cast<double>(d);

  // d f / d p = Re(g0 * Tr(W_j dM_j/dp)); subgradient 0 at Tr = 0.
  const Complex g0 = abs_tr > 0.0 ? -std::conj(tr) / (abs_tr * static_cast<double>(d))
                                  : Complex(0.0, 0.0);

  RVector grad = RVector::Zero(param_count_);
  Eigen::Index at = 0;
  for (size_t j = 0; j < count; ++j) {
    // suf[j+1] skips M_j itself: U_C = suf[j+1] M_j pre[j].
    const CMatrix w = pre[j] * target_adj_ * suf[j + 1];
    const int m = std::visit([](const auto& blk) { return blk.fn.m; }, blocks[j]);
    const Eigen::Index dg = Eigen::Index(1) << m;
    const Eigen::Index rest = d / dg;
    const auto& basis = pauli_basis(m);
    const GateFunction& fn = std::visit(
        [](const auto& blk) -> const GateFunction& { return blk.fn; }, blocks[j]);

    // alpha gradient: dM/da_k = S (L_k (x) I) S^T with L_k the Frechet
    // derivative of exp at iH along i sigma_k. Contract the identity factor
    // once, then each direction is a gate-sized trace. In the eigenbasis of H
    // the derivative is the divided difference of x -> e^{ix}:
    //   L_k = V (Phi . (V^dag sigma_k V)) V^dag,
    //   Phi(a,b) = (e^{i la} - e^{i lb}) / (la - lb), Phi(a,a) = i e^{i la}.
    const CMatrix wp = mixes[j].transpose() * w * mixes[j];
    CMatrix wsmall = CMatrix::Zero(dg, dg);
    for (Eigen::Index a = 0; a < dg; ++a) {
      for (Eigen::Index b = 0; b < dg; ++b) {
        Complex acc(0.0, 0.0);
        for (Eigen::Index u = 0; u < rest; ++u) acc += wp(a * rest + u, b * rest + u);
        wsmall(a, b) = acc;
      }
    }
    const CMatrix& v = eigvecs[j];
    const RVector& lam = eigvals[j];
    CMatrix phi(dg, dg);
    for (Eigen::Index a = 0; a < dg; ++a) {
      for (Eigen::Index b = 0; b < dg; ++b) {
        const double gap = lam[a] - lam[b];
        if (std::abs(gap) < 1e-12) {
          phi(a, b) = imag_unit * std::polar(1.0, lam[a]);
        } else {
          phi(a, b) = (std::polar(1.0, lam[a]) - std::polar(1.0, lam[b])) / gap;
        }
      }
    }
    // Tr(W L_k) = sum_ab (V^dag W V)(b, a) Phi(a, b) (V^dag s_k V)(a, b).
    const CMatrix wtilde = (v.adjoint() * wsmall * v).transpose();
    for (int k = 0; k < fn.parameter_count(); ++k) {
      const CMatrix stilde = v.adjoint() * basis[k] * v;
      grad[at + k] = (g0 * (wtilde.cwiseProduct(phi).cwiseProduct(stilde)).sum()).real();
    }
    at += fn.parameter_count();

    // logit gradient: dS/dl_r = s_r (P_r - S).
    if (const auto* var = std::get_if<VariableBlock>(&blocks[j])) {
      const CMatrix gi = padded(gates[j], n_, m);
      const CMatrix b1 = gi * mixes[j].transpose() * w;
      const CMatrix b2 = w * mixes[j] * gi;
      for (size_t r = 0; r < var->candidates.size(); ++r) {
        const CMatrix x = perms_[j][r] - mixes[j];
        const Complex t1 = (b1.transpose().cwiseProduct(x)).sum();
        const Complex t2 = (b2.cwiseProduct(x)).sum();
        grad[at + static_cast<Eigen::Index>(r)] =
            (g0 * softs[j][r] * (t1 + t2)).real();
      }
      at += static_cast<Eigen::Index>(var->candidates.size());
    }
  }

  return {f, std::move(grad)};
}

std::pair<double, RVector> objective_and_gradient(const std::vector<Block>& blocks,
                                                  const CMatrix& target) {
  CircuitObjective obj(blocks, target);
  return obj(pack_parameters(blocks));
}

}  // namespace usynth
