// SPDX-License-Identifier: Apache-2.0

#include "usynth/bench.hpp"

#include <chrono>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace usynth {

std::vector<std::string> benchmark_suite(const std::string& suite) {
  if (suite == "small") {
    return {"toffoli", "fredkin", "qft3", "tfim-3-1", "tfim-3-5", "tfim-3-10"};
  }
  if (suite == "stretch") {
    return {"qft4", "tfim-4-1", "tfim-4-10"};
  }
  throw std::invalid_argument("unknown suite '" + suite + "'");
}

BenchRow run_benchmark(const std::string& name, const std::string& topology,
                       const SynthOptions& opts) {
  const CMatrix target = benchmark_target(name);
  int n = 0;
  while ((Eigen::Index(1) << n) < target.rows()) ++n;

  Topology t;
  if (topology == "all") {
    t = Topology::all_to_all(n);
  } else if (topology == "linear") {
    t = Topology::linear(n);
  } else {
    throw std::invalid_argument("unknown topology '" + topology + "'");
  }

  BenchRow row;
  row.name = name;
  row.n = n;
  const auto start = std::chrono::steady_clock::now();
  SynthResult res = synthesize(target, t, opts);
  row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  row.converged = res.converged;
  row.distance = res.distance;
  row.stats = metrics(res.circuit);
  row.circuit = std::move(res.circuit);

  if (name.rfind("tfim-", 0) == 0) {
    const auto dash = name.find('-', 5);
    const int steps = std::stoi(name.substr(dash + 1));
    row.reference_cnots = metrics(tfim_trotter_circuit(n, steps)).cnot_count;
  }
  return row;
}

std::string format_bench_table(const std::vector<BenchRow>& rows) {
  std::ostringstream out;
  char line[160];
  std::snprintf(line, sizeof(line), "%-12s %2s %6s %5s %6s %12s %11s %9s %9s\n",
                "benchmark", "n", "cnots", "u3s", "depth", "parallelism",
                "distance", "ref_cnots", "time_s");
  out << line;
  for (const BenchRow& r : rows) {
    char ref[16] = "-";
    if (r.reference_cnots >= 0) std::snprintf(ref, sizeof(ref), "%d", r.reference_cnots);
    std::snprintf(line, sizeof(line), "%-12s %2d %6d %5d %6d %12.2f %11.3e %9s %9.2f\n",
                  r.name.c_str(), r.n, r.stats.cnot_count, r.stats.u3_count,
                  r.stats.depth, r.stats.parallelism, r.distance, ref, r.seconds);
    out << line;
  }
  return out.str();
}

}  // namespace usynth
