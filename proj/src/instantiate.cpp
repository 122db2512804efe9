// SPDX-License-Identifier: Apache-2.0

#include "usynth/instantiate.hpp"

#include <cmath>
#include <future>
#include <numbers>
#include <random>

#include "usynth/minimize.hpp"

namespace usynth {

namespace {

constexpr double kPi = std::numbers::pi;

CMatrix embed_1q(const CMatrix& g, int wire) {
  const CMatrix ident = CMatrix::Identity(2, 2);
  return wire == 0 ? kron(g, ident) : kron(ident, g);
}

const CMatrix& cnot01() {
  static const CMatrix cx = [] {
    CMatrix m = CMatrix::Identity(4, 4);
    m(2, 2) = m(3, 3) = 0.0;
    m(2, 3) = m(3, 2) = 1.0;
    return m;
  }();
  return cx;
}

// Distance objective for the k-CNOT template: U3 on both wires, then k
// repetitions of [CNOT(0,1), U3 on both wires]. Parameters are the U3 angle
// triples in gate order.
class TemplateObjective {
 public:
  TemplateObjective(int cnots, const CMatrix& target)
      : cnots_(cnots), target_adj_(target.adjoint()) {
    // Gate order: u3(w0), u3(w1), [cx, u3(w0), u3(w1)] * k.
    int pbase = 0;
    slots_.push_back({0, pbase});
    pbase += 3;
    slots_.push_back({1, pbase});
    pbase += 3;
    for (int rep = 0; rep < cnots_; ++rep) {
      slots_.push_back({-1, 0});
      slots_.push_back({0, pbase});
      pbase += 3;
      slots_.push_back({1, pbase});
      pbase += 3;
    }
    param_count_ = pbase;
  }

  int parameter_count() const { return param_count_; }

  std::pair<double, RVector> operator()(const RVector& p) const {
    const size_t count = slots_.size();
    std::vector<CMatrix> mats(count);
    for (size_t j = 0; j < count; ++j) {
      const auto [wire, pb] = slots_[j];
      mats[j] = wire < 0 ? cnot01()
                         : embed_1q(u3_matrix(p[pb], p[pb + 1], p[pb + 2]), wire);
    }

    std::vector<CMatrix> pre(count + 1), suf(count + 1);
    pre[0] = CMatrix::Identity(4, 4);
    for (size_t j = 0; j < count; ++j) pre[j + 1] = mats[j] * pre[j];
    suf[count] = CMatrix::Identity(4, 4);
    for (size_t j = count; j-- > 0;) suf[j] = suf[j + 1] * mats[j];

    const Complex tr = (target_adj_ * pre[count]).trace();
    const double abs_tr = std::abs(tr);
    const double f = 1.0 - abs_tr / 4.0;
    const Complex g0 =
        abs_tr > 0.0 ? -std::conj(tr) / (4.0 * abs_tr) : Complex(0.0, 0.0);

    RVector grad = RVector::Zero(param_count_);
    for (size_t j = 0; j < count; ++j) {
      const auto [wire, pb] = slots_[j];
      if (wire < 0) continue;
      const CMatrix w = pre[j] * target_adj_ * suf[j + 1];
      const auto derivs = u3_matrix_derivatives(p[pb], p[pb + 1], p[pb + 2]);
      for (int i = 0; i < 3; ++i) {
        grad[pb + i] = (g0 * (w * embed_1q(derivs[i], wire)).trace()).real();
      }
    }
    return {f, std::move(grad)};
  }

  Circuit build(const RVector& p) const {
    Circuit c;
    c.n = 2;
    for (const auto& [wire, pb] : slots_) {
      if (wire < 0) {
        c.gates.push_back(make_cnot(0, 1));
      } else {
        c.gates.push_back(canonicalized(make_u3(wire, p[pb], p[pb + 1], p[pb + 2])));
      }
    }
    return c;
  }

 private:
  int cnots_;
  CMatrix target_adj_;
  std::vector<std::pair<int, int>> slots_;  // (wire or -1 for CNOT, param base)
  int param_count_ = 0;
};

}  // namespace

Circuit Template2QBackend::synthesize(const CMatrix& u, double threshold,
                                      uint64_t seed) const {
  if (u.rows() != 4 || u.cols() != 4) {
    throw std::invalid_argument("template2q: expected a 4x4 unitary");
  }
  if (!is_unitary(u, 1e-8)) {
    throw std::invalid_argument("template2q: input is not unitary");
  }

  MinimizeOptions opts;
  opts.gradient_tolerance = 1e-12;
  opts.max_iterations = 500;

  for (int round = 0; round < 2; ++round) {
    const int tries = round == 0 ? restarts_ : escalated_restarts_;
    for (int k = 0; k <= 3; ++k) {
      TemplateObjective objective(k, u);
      for (int attempt = 0; attempt < tries; ++attempt) {
        std::mt19937_64 rng(derive_seed(seed, static_cast<uint64_t>(round),
                                        static_cast<uint64_t>(k),
                                        static_cast<uint64_t>(attempt)));
        std::uniform_real_distribution<double> dist(-kPi, kPi);
        RVector x0(objective.parameter_count());
        for (Eigen::Index i = 0; i < x0.size(); ++i) x0[i] = dist(rng);

        const MinimizeResult sol = minimize(objective, x0, opts);
        if (sol.f <= threshold) return objective.build(sol.x);
      }
    }
  }
  throw SynthesisFailure("template2q: no template reached the threshold");
}

std::unique_ptr<SynthesisBackend> make_backend(const std::string& name) {
  if (name == "template2q") return std::make_unique<Template2QBackend>();
  throw std::invalid_argument("unknown backend '" + name + "'");
}

std::vector<Circuit> instantiate_blocks(const BlockList& blocks,
                                        const SynthesisBackend& backend,
                                        double threshold, uint64_t seed, int jobs) {
  const Eigen::Index want = Eigen::Index(1) << backend.arity();
  for (size_t i = 0; i < blocks.blocks.size(); ++i) {
    if (blocks.blocks[i].second.rows() != want) {
      throw std::invalid_argument("instantiate: block " + std::to_string(i) +
                                  " does not match backend arity");
    }
  }

  auto one = [&](size_t i) -> Circuit {
    try {
      return backend.synthesize(blocks.blocks[i].second, threshold,
                                derive_seed(seed, 0xb10cULL, i));
    } catch (const std::exception& err) {
      throw SynthesisFailure("block " + std::to_string(i) + ": " + err.what());
    }
  };

  std::vector<Circuit> out(blocks.blocks.size());
  if (jobs <= 1 || blocks.blocks.size() <= 1) {
    for (size_t i = 0; i < out.size(); ++i) out[i] = one(i);
    return out;
  }

  std::vector<std::future<Circuit>> futures;
  futures.reserve(out.size());
  for (size_t i = 0; i < out.size(); ++i) {
    futures.push_back(std::async(std::launch::async, one, i));
    if (static_cast<int>(futures.size()) == jobs || i + 1 == out.size()) {
      // Drain the pool; merge is by index so order is deterministic.
      const size_t base = i + 1 - futures.size();
      for (size_t j = 0; j < futures.size(); ++j) out[base + j] = futures[j].get();
      futures.clear();
    }
  }
  return out;
}

}  // namespace usynth
