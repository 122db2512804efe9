// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include "usynth/pipeline.hpp"
#include "usynth/targets.hpp"

namespace usynth {

struct BenchRow {
  std::string name;
  int n = 0;
  bool converged = false;
  double distance = 0.0;
  Metrics stats;
  double seconds = 0.0;
  int reference_cnots = -1;  // generator-style circuit, TFIM rows only
  Circuit circuit;
};

/// Benchmark names for a suite: "small" (3-qubit set) or "stretch" (manual
/// 4-qubit runs, not part of the test gate).
std::vector<std::string> benchmark_suite(const std::string& suite);

/// Synthesizes one named benchmark on the given topology kind ("all" or
/// "linear").
BenchRow run_benchmark(const std::string& name, const std::string& topology,
                       const SynthOptions& opts);

/// Fixed-width table over the rows, one line per benchmark plus a header.
std::string format_bench_table(const std::vector<BenchRow>& rows);

}  // namespace usynth
