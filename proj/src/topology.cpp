// SPDX-License-Identifier: Apache-2.0

#include "usynth/topology.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace usynth {

namespace {

std::pair<int, int> make_edge(int a, int b) {
  return {std::min(a, b), std::max(a, b)};
}

}  // namespace

Topology Topology::all_to_all(int n) {
  Topology t;
  t.n = n;
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) t.edges.insert({a, b});
  }
  return t;
}

Topology Topology::linear(int n) {
  Topology t;
  t.n = n;
  for (int a = 0; a + 1 < n; ++a) t.edges.insert({a, a + 1});
  return t;
}

Topology Topology::from_edges(int n,
                              const std::vector<std::pair<int, int>>& edges) {
  Topology t;
  t.n = n;
  for (auto [a, b] : edges) {
    if (a == b) throw std::invalid_argument("topology: self-loop");
    if (a < 0 || b < 0 || a >= n || b >= n) {
      throw std::invalid_argument("topology: edge endpoint out of range");
    }
    t.edges.insert(make_edge(a, b));
  }
  return t;
}

Topology Topology::from_coupling_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("topology: cannot open " + path);
  std::vector<std::pair<int, int>> edges;
  int max_qubit = -1;
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ss(line);
    int a, b;
    if (!(ss >> a)) continue;
    if (!(ss >> b)) throw std::invalid_argument("topology: malformed edge line: " + line);
    edges.emplace_back(a, b);
    max_qubit = std::max({max_qubit, a, b});
  }
  if (edges.empty()) throw std::invalid_argument("topology: no edges in " + path);
  return from_edges(max_qubit + 1, edges);
}

bool Topology::has_edge(int a, int b) const {
  return edges.count(make_edge(a, b)) > 0;
}

namespace {

bool induced_connected(const Topology& t, const Location& q) {
  if (q.size() <= 1) return true;
  const int m = static_cast<int>(q.size());
  std::vector<bool> seen(m, false);
  std::vector<int> stack{0};
  seen[0] = true;
  int visited = 1;
  while (!stack.empty()) {
    const int cur = stack.back();
    stack.pop_back();
    for (int other = 0; other < m; ++other) {
      if (!seen[other] && t.has_edge(q[cur], q[other])) {
        seen[other] = true;
        ++visited;
        stack.push_back(other);
      }
    }
  }
  return visited == m;
}

void enumerate_subsets(const Topology& t, int m, int first, Location& current,
                       std::vector<Location>& out) {
  if (static_cast<int>(current.size()) == m) {
    if (induced_connected(t, current)) out.push_back(current);
    return;
  }
  const int need = m - static_cast<int>(current.size());
  for (int w = first; w + need <= t.n; ++w) {
    current.push_back(w);
    enumerate_subsets(t, m, w + 1, current, out);
    current.pop_back();
  }
}

}  // namespace

std::vector<Location> locations(const Topology& t, int m) {
  if (m < 1 || m > t.n) {
    throw std::invalid_argument("locations: m out of range");
  }
  std::vector<Location> out;
  Location current;
  enumerate_subsets(t, m, 0, current, out);
  return out;
}

}  // namespace usynth
