// SPDX-License-Identifier: Apache-2.0

#include "usynth/pipeline.hpp"

#include <random>

namespace usynth {

SynthResult synthesize(const CMatrix& target, const Topology& topology,
                       const SynthOptions& opts) {
  const auto backend = make_backend(opts.backend);

  SynthResult result;
  const int n = topology.n;
  result.circuit.n = n;

  DecomposeConfig cfg = opts.decompose;

  if (n < backend->arity()) {
    throw std::invalid_argument("synthesize: target narrower than the native backend");
  }
  if (n == backend->arity()) {
    // Nothing to decompose; the whole target is one native block.
    result.blocks.n = n;
    Location all(n);
    for (int w = 0; w < n; ++w) all[w] = w;
    result.blocks.blocks.emplace_back(std::move(all), target);
    result.blocks.achieved_distance = 0.0;
  } else {
    cfg.block_size = std::min(cfg.block_size, n - 1);
    cfg.block_size = std::max(cfg.block_size, backend->arity());
    try {
      result.blocks = decompose_hierarchical(target, topology, cfg, backend->arity());
    } catch (const DepthLimitError& err) {
      result.blocks = err.best;
    }
  }

  if (result.blocks.empty()) {
    result.distance = distance(circuit_to_unitary(result.circuit), target);
    result.converged = result.distance <= cfg.threshold;
    return result;
  }

  const std::vector<Circuit> subcircuits = instantiate_blocks(
      result.blocks, *backend, opts.native_threshold, cfg.seed, opts.jobs);
  result.circuit = recombine(result.blocks, subcircuits);
  result.distance = distance(circuit_to_unitary(result.circuit), target);
  result.converged = result.distance <= cfg.threshold;
  return result;
}

FidelityStats state_fidelity(const Circuit& c, const CMatrix& target,
                             int random_states, uint64_t seed) {
  const Eigen::Index d = target.rows();
  FidelityStats stats;
  stats.min = 1.0;
  double total = 0.0;
  int count = 0;

  auto accumulate = [&](const CVector& psi) {
    const CVector out_target = target * psi;
    const CVector out_circuit = apply_circuit(c, psi);
    const double fid = std::norm(out_target.dot(out_circuit));
    stats.min = std::min(stats.min, fid);
    total += fid;
    ++count;
  };

  for (Eigen::Index b = 0; b < d; ++b) {
    CVector psi = CVector::Zero(d);
    psi[b] = 1.0;
    accumulate(psi);
  }

  std::mt19937_64 rng(derive_seed(seed, 0xf1de11ULL));
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int k = 0; k < random_states; ++k) {
    CVector psi(d);
    for (Eigen::Index i = 0; i < d; ++i) psi[i] = Complex(gauss(rng), gauss(rng));
    psi /= psi.norm();
    accumulate(psi);
  }

  stats.avg = count > 0 ? total / count : 1.0;
  stats.states = count;
  return stats;
}

}  // namespace usynth
