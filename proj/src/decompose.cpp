// SPDX-License-Identifier: Apache-2.0

#include "usynth/decompose.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace usynth {

namespace {

uint64_t splitmix(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

int width_of(const CMatrix& u) {
  const Eigen::Index d = u.rows();
  int n = 0;
  while ((Eigen::Index(1) << n) < d) ++n;
  if ((Eigen::Index(1) << n) != d || u.cols() != d) {
    throw std::invalid_argument("decompose: dimension is not a power of two");
  }
  return n;
}

RVector random_alpha(int count, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> dist(-0.1, 0.1);
  RVector a(count);
  for (int i = 0; i < count; ++i) a[i] = dist(rng);
  return a;
}

struct LayerAttempt {
  double dist = 2.0;
  Location chosen;
  std::vector<RVector> alphas;  // prefix alphas then head alpha
  bool valid = false;
};

}  // namespace

uint64_t derive_seed(uint64_t seed, uint64_t a, uint64_t b, uint64_t c) {
  return splitmix(splitmix(splitmix(splitmix(seed) ^ a) ^ b) ^ c);
}

CMatrix recompose(const BlockList& bl) {
  std::vector<CMatrix> mats;
  mats.reserve(bl.blocks.size());
  for (const auto& [loc, u] : bl.blocks) {
    const CMatrix p = qubit_permutation(loc, bl.n);
    const int m = static_cast<int>(loc.size());
    const Eigen::Index rest = Eigen::Index(1) << (bl.n - m);
    mats.push_back(p * kron(u, CMatrix::Identity(rest, rest)) * p.transpose());
  }
  return circuit_product(mats, bl.n);
}

BlockList decompose(const CMatrix& target, const Topology& t, const DecomposeConfig& cfg) {
  const int n = width_of(target);
  if (n != t.n) throw std::invalid_argument("decompose: target width != topology width");
  if (!is_unitary(target, 1e-6)) throw std::invalid_argument("decompose: target not unitary");
  if (cfg.block_size < 2 || cfg.block_size >= n) {
    throw std::invalid_argument("decompose: need 2 <= block_size < n");
  }
  if (!(cfg.threshold > 0.0 && cfg.threshold < 1.0)) {
    throw std::invalid_argument("decompose: threshold must be in (0, 1)");
  }

  const int m = cfg.block_size;
  const int alpha_len = 1 << (2 * m);
  const Eigen::Index d = Eigen::Index(1) << n;
  const std::vector<Location> all_locations = locations(t, m);
  if (all_locations.empty()) {
    throw std::invalid_argument("decompose: topology admits no connected " +
                                std::to_string(m) + "-qubit locations");
  }
  const int restarts = std::max(1, cfg.restarts_per_layer);

  BlockList result;
  result.n = n;
  result.achieved_distance = distance(CMatrix::Identity(d, d), target);
  if (result.achieved_distance <= cfg.threshold) return result;  // zero-layer solution

  // The growing prefix of location-fixed blocks.
  std::vector<Location> prefix_locs;
  std::vector<RVector> prefix_alphas;
  double prev_dist = result.achieved_distance;

  auto make_blocks = [&](const std::vector<RVector>& alphas) {
    std::vector<Block> blocks;
    blocks.reserve(prefix_locs.size());
    for (size_t i = 0; i < prefix_locs.size(); ++i) {
      blocks.push_back(FixedBlock{GateFunction{m, alphas[i]}, prefix_locs[i], n});
    }
    return blocks;
  };

  auto finish = [&] {
    result.blocks.clear();
    for (size_t i = 0; i < prefix_locs.size(); ++i) {
      result.blocks.emplace_back(prefix_locs[i],
                                 gate_unitary(GateFunction{m, prefix_alphas[i]}));
    }
    // Recompute through the emitted matrices so the reported distance is
    // exactly the distance of the recomposed product.
    result.achieved_distance = distance(recompose(result), target);
  };

  for (int layer = 0; layer < cfg.max_layers; ++layer) {
    std::vector<Location> candidates = all_locations;
    if (!prefix_locs.empty() && candidates.size() > 1) {
      // A head on the previous layer's location merges into that block and
      // cannot add expressive power; it also traps the location search.
      candidates.erase(
          std::find(candidates.begin(), candidates.end(), prefix_locs.back()));
    }
    std::vector<LayerAttempt> attempts;
    LayerAttempt accepted;

    for (int attempt_idx = 0; !candidates.empty(); ++attempt_idx) {
      LayerAttempt best;
      auto run_restart = [&](int r) {
        std::mt19937_64 rng(derive_seed(cfg.seed, static_cast<uint64_t>(layer),
                                        static_cast<uint64_t>(attempt_idx),
                                        static_cast<uint64_t>(r)));

        // (1) append a variable-location head over the remaining candidates.
        // Restart 0 warm-starts the prefix from its accepted values; later
        // restarts redraw every gate function (near-identity warm starts can
        // pin the joint problem to the previous layer's local minimum).
        std::vector<RVector> start_alphas = prefix_alphas;
        if (r > 0) {
          for (RVector& a : start_alphas) a = random_alpha(alpha_len, rng);
        }
        std::vector<Block> blocks = make_blocks(start_alphas);
        blocks.push_back(VariableBlock{GateFunction{m, random_alpha(alpha_len, rng)},
                                       candidates,
                                       RVector::Zero(static_cast<Eigen::Index>(candidates.size())),
                                       n});

        // (2) solve for every gate function and the head's location.
        CircuitObjective search(blocks, target);
        MinimizeResult sol = minimize(search, search.parameters(), cfg.solver);
        std::vector<Block> solved = search.with_parameters(sol.x);
        const auto& head = std::get<VariableBlock>(solved.back());
        const Location chosen = head.candidates[argmax(head.logits)];

        // (3) re-solve with the head pinned to the chosen location.
        std::vector<Block> pinned = solved;
        pinned.back() = FixedBlock{head.fn, chosen, n};
        CircuitObjective polish(pinned, target);
        MinimizeResult ref = minimize(polish, polish.parameters(), cfg.solver);
        std::vector<Block> final_blocks = polish.with_parameters(ref.x);

        if (!best.valid || ref.f < best.dist) {
          best.valid = true;
          best.dist = ref.f;
          best.chosen = chosen;
          best.alphas.clear();
          for (const Block& b : final_blocks) {
            best.alphas.push_back(std::get<FixedBlock>(b).fn.alpha);
          }
        }
      };

      for (int r = 0; r < restarts; ++r) run_restart(r);

      const double slack = std::max(cfg.plateau_slack * prev_dist, cfg.plateau_floor);
      if (restarts == 1 && best.dist > prev_dist - slack) {
        // The warm-started solve made no real progress; rescue the layer with
        // one fresh draw before plateau handling gets to ban the location.
        run_restart(1);
      }

      if (best.dist <= prev_dist - slack) {
        accepted = best;  // real progress
        break;
      }
      // Plateau or stall: drop the location the optimizer picked and retry.
      // A stalled head adds a redundant block, and the soft location search
      // tends to re-pick the same few locations when stuck, so both cases
      // get the restricted-candidates treatment.
      attempts.push_back(best);
      candidates.erase(std::find(candidates.begin(), candidates.end(), best.chosen));
    }

    if (!accepted.valid) {
      // Every candidate stalled or regressed; keep the best attempt. If even
      // that lost ground, fall back to an identity head at the same location:
      // the distance carries over exactly and the cleanup pass below strips
      // dead blocks once the run converges.
      accepted = *std::min_element(attempts.begin(), attempts.end(),
                                   [](const LayerAttempt& a, const LayerAttempt& b) {
                                     return a.dist < b.dist;
                                   });
      if (accepted.dist > prev_dist) {
        accepted.dist = prev_dist;
        accepted.alphas = prefix_alphas;
        accepted.alphas.push_back(RVector::Zero(alpha_len));
      }
    }

    prefix_locs.push_back(accepted.chosen);
    prefix_alphas = accepted.alphas;
    prev_dist = accepted.dist;
    result.layer_distances.push_back(prev_dist);

    if (prev_dist <= cfg.threshold) break;
  }

  if (prev_dist > cfg.threshold) {
    finish();
    throw DepthLimitError("decompose: max_layers reached at distance " +
                              std::to_string(prev_dist),
                          result);
  }

  // Post-convergence cleanup. Greedy growth can leave redundant layers, and
  // warm-started solutions tend to spread interaction across blocks, which
  // the native backend pays for in entangling gates. Re-solving a structure
  // from a fresh near-identity start lands on low-interaction solutions, so:
  // repeatedly try dropping one block (fresh re-solve must stay under the
  // threshold), then re-solve the surviving structure the same way.
  {
    const int tries = std::max(2, restarts);
    auto fresh_solve = [&](const std::vector<Location>& locs,
                           std::vector<RVector>& alphas_out, uint64_t salt) {
      std::vector<Block> blocks;
      blocks.reserve(locs.size());
      for (const Location& q : locs) {
        blocks.push_back(FixedBlock{GateFunction{m, RVector::Zero(alpha_len)}, q, n});
      }
      CircuitObjective objective(blocks, target);
      for (int r = 0; r < tries; ++r) {
        std::mt19937_64 rng(derive_seed(cfg.seed, 0x2ef17ULL, salt,
                                        static_cast<uint64_t>(r)));
        RVector x0(objective.parameter_count());
        for (size_t i = 0; i < locs.size(); ++i) {
          x0.segment(static_cast<Eigen::Index>(i) * alpha_len, alpha_len) =
              random_alpha(alpha_len, rng);
        }
        const MinimizeResult res = minimize(objective, x0, cfg.solver);
        if (res.f <= cfg.threshold) {
          const std::vector<Block> solved = objective.with_parameters(res.x);
          alphas_out.clear();
          for (const Block& b : solved) {
            alphas_out.push_back(std::get<FixedBlock>(b).fn.alpha);
          }
          return res.f;
        }
      }
      return 2.0;  // did not reach the threshold
    };

    uint64_t salt = 1;
    bool have_fresh_solution = false;
    bool shrunk = true;
    while (shrunk && prefix_locs.size() > 1) {
      shrunk = false;
      for (size_t drop = 0; drop < prefix_locs.size(); ++drop, ++salt) {
        std::vector<Location> trimmed = prefix_locs;
        trimmed.erase(trimmed.begin() + static_cast<long>(drop));
        std::vector<RVector> alphas;
        const double dist_trimmed = fresh_solve(trimmed, alphas, salt);
        if (dist_trimmed <= cfg.threshold) {
          prefix_locs = std::move(trimmed);
          prefix_alphas = std::move(alphas);
          prev_dist = dist_trimmed;
          have_fresh_solution = true;
          shrunk = true;
          break;
        }
      }
    }

    if (!have_fresh_solution) {
      std::vector<RVector> alphas;
      const double refit_dist = fresh_solve(prefix_locs, alphas, 0);
      if (refit_dist <= cfg.threshold) {
        prefix_alphas = std::move(alphas);
        prev_dist = refit_dist;
      }
    }
  }

  finish();
  return result;
}

namespace {

// Coupling graph inside a block: the induced subgraph of t on the block's
// qubits, relabeled to local indices. Connected by construction since block
// locations are connected.
Topology induced_topology(const Topology& t, const Location& q) {
  Topology inner;
  inner.n = static_cast<int>(q.size());
  for (int a = 0; a < inner.n; ++a) {
    for (int b = a + 1; b < inner.n; ++b) {
      if (t.has_edge(q[a], q[b])) inner.edges.insert({a, b});
    }
  }
  return inner;
}

}  // namespace

BlockList decompose_hierarchical(const CMatrix& target, const Topology& t,
                                 const DecomposeConfig& cfg, int native_size) {
  if (native_size < 2 || native_size > cfg.block_size) {
    throw std::invalid_argument("decompose_hierarchical: need 2 <= native_size <= block_size");
  }
  BlockList top;
  std::string depth_failure;
  try {
    top = decompose(target, t, cfg);
  } catch (const DepthLimitError& err) {
    // Still refine the best-effort blocks so the carried list is made of
    // native-sized blocks whatever happens.
    top = err.best;
    depth_failure = err.what();
  }
  if (cfg.block_size <= native_size) {
    if (!depth_failure.empty()) throw DepthLimitError(depth_failure, top);
    return top;
  }

  BlockList flat;
  flat.n = top.n;
  flat.layer_distances = top.layer_distances;
  for (size_t i = 0; i < top.blocks.size(); ++i) {
    const auto& [loc, u] = top.blocks[i];
    const int b = static_cast<int>(loc.size());
    if (b <= native_size) {
      flat.blocks.emplace_back(loc, u);
      continue;
    }
    DecomposeConfig inner_cfg = cfg;
    inner_cfg.block_size = std::min(cfg.block_size, b - 1);
    inner_cfg.seed = derive_seed(cfg.seed, 0x51b1e7e1ULL, i);
    BlockList inner;
    try {
      inner = decompose_hierarchical(u, induced_topology(t, loc), inner_cfg, native_size);
    } catch (const DepthLimitError& err) {
      // Keep flattening so the caller still gets a full-width list; the
      // error is raised at the end with context.
      inner = err.best;
      if (depth_failure.empty()) {
        depth_failure = "block " + std::to_string(i) + ": " + err.what();
      }
    }
    for (const auto& [inner_loc, inner_u] : inner.blocks) {
      Location global;
      global.reserve(inner_loc.size());
      for (int w : inner_loc) global.push_back(loc[w]);
      flat.blocks.emplace_back(std::move(global), inner_u);
    }
  }
  flat.achieved_distance = distance(recompose(flat), target);
  if (!depth_failure.empty()) throw DepthLimitError(depth_failure, flat);
  return flat;
}

}  // namespace usynth
