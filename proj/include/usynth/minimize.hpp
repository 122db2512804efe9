// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <stdexcept>
#include <utility>

#include "usynth/matrix.hpp"

namespace usynth {

struct MinimizeOptions {
  int max_iterations = 1000;
  double gradient_tolerance = 1e-9;  // on the max-norm of the gradient
  int memory = 10;                   // L-BFGS history pairs
  int max_line_search = 50;
};

struct MinimizeResult {
  RVector x;
  double f = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Thrown when the objective returns NaN/inf mid-run; `best` holds the last
/// good iterate.
struct NumericalFailure : std::runtime_error {
  NumericalFailure(const std::string& what, MinimizeResult best_result)
      : std::runtime_error(what), best(std::move(best_result)) {}
  MinimizeResult best;
};

using Objective = std::function<std::pair<double, RVector>(const RVector&)>;

/// Limited-memory BFGS with a strong-Wolfe line search (c1 = 1e-4, c2 = 0.9).
/// Deterministic given (objective, x0, opts). Returns the best iterate seen;
/// result.f <= f(x0) always.
MinimizeResult minimize(const Objective& objective, RVector x0,
                        const MinimizeOptions& opts = {});

}  // namespace usynth
