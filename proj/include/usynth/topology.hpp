// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "usynth/pauli.hpp"

namespace usynth {

/// Coupling graph over n qubits. Edges are unordered pairs stored as
/// (min, max); self-loops are rejected.
struct Topology {
  int n = 0;
  std::set<std::pair<int, int>> edges;

  static Topology all_to_all(int n);
  static Topology linear(int n);
  /// Builds from explicit edges, validating endpoints.
  static Topology from_edges(int n, const std::vector<std::pair<int, int>>& edges);
  /// Reads one "i j" edge per line (blank lines and '#' comments skipped);
  /// n is taken as 1 + the largest endpoint.
  static Topology from_coupling_file(const std::string& path);

  bool has_edge(int a, int b) const;
};

/// All size-m qubit subsets whose induced subgraph is connected, in ascending
/// lexicographic order. Throws std::invalid_argument when m is out of range.
std::vector<Location> locations(const Topology& t, int m);

}  // namespace usynth
