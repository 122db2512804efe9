// SPDX-License-Identifier: Apache-2.0

#include "usynth/minimize.hpp"

#include <cmath>
#include <deque>

namespace usynth {

namespace {

constexpr double kC1 = 1e-4;  // sufficient decrease
constexpr double kC2 = 0.9;   // curvature

bool finite(double f, const RVector& g) {
  return std::isfinite(f) && g.allFinite();
}

struct Point {
  double f;
  RVector g;
};

// Cubic-interpolated minimizer of a 1-D function known at (a, fa, da) and
// (b, fb); falls back to bisection when the interpolant is degenerate.
double interpolate(double a, double fa, double da, double b, double fb) {
  const double width = b - a;
  if (width == 0.0) return a;
  // Quadratic model through fa, da, fb.
  const double denom = 2.0 * (fb - fa - da * width);
  if (denom != 0.0) {
    const double t = -da * width * width / denom;
    const double cand = a + t;
    const double lo = std::min(a, b), hi = std::max(a, b);
    const double margin = 0.1 * std::abs(width);
    if (std::isfinite(cand) && cand > lo + margin && cand < hi - margin) return cand;
  }
  return 0.5 * (a + b);
}

}  // namespace

MinimizeResult minimize(const Objective& objective, RVector x0,
                        const MinimizeOptions& opts) {
  if (!x0.allFinite()) throw std::invalid_argument("minimize: non-finite x0");

  auto [f0, g0] = objective(x0);
  if (!finite(f0, g0)) throw std::invalid_argument("minimize: objective non-finite at x0");
  if (g0.size() != x0.size()) throw std::invalid_argument("minimize: gradient length mismatch");

  RVector x = x0;
  double f = f0;
  RVector g = g0;

  MinimizeResult best{x, f, 0, false};
  auto update_best = [&best](const RVector& bx, double bf, int it) {
    if (bf < best.f) {
      best.x = bx;
      best.f = bf;
    }
    best.iterations = it;
  };

  std::deque<RVector> s_hist, y_hist;
  std::deque<double> rho_hist;

  const auto fail = [&best](const char* what) -> void {
    throw NumericalFailure(what, best);
  };

  int iter = 0;
  for (; iter < opts.max_iterations; ++iter) {
    if (g.cwiseAbs().maxCoeff() <= opts.gradient_tolerance) {
      best.converged = true;
      break;
    }

    // Two-loop recursion for the search direction.
    RVector dir = -g;
    const int hist = static_cast<int>(s_hist.size());
    std::vector<double> alpha_coef(hist);
    for (int i = hist - 1; i >= 0; --i) {
      alpha_coef[i] = rho_hist[i] * s_hist[i].dot(dir);
      dir -= alpha_coef[i] * y_hist[i];
    }
    if (hist > 0) {
      const double gamma = s_hist.back().dot(y_hist.back()) / y_hist.back().squaredNorm();
      dir *= gamma;
    }
    for (int i = 0; i < hist; ++i) {
      const double beta = rho_hist[i] * y_hist[i].dot(dir);
      dir += (alpha_coef[i] - beta) * s_hist[i];
    }

    double d0 = g.dot(dir);
    if (!(d0 < 0.0)) {  // not a descent direction; restart from steepest descent
      dir = -g;
      d0 = g.dot(dir);
      s_hist.clear();
      y_hist.clear();
      rho_hist.clear();
    }

    // Strong-Wolfe line search (bracket then zoom).
    const double f_at = f;
    double step = 1.0;
    double prev_step = 0.0;
    double prev_f = f_at;
    double prev_d = d0;
    bool accepted = false;
    RVector x_new;
    Point p_new{0.0, RVector()};

    auto eval_at = [&](double t) -> Point {
      const RVector xt = x + t * dir;
      auto [ft, gt] = objective(xt);
      if (!finite(ft, gt)) fail("minimize: objective returned NaN/inf");
      return {ft, std::move(gt)};
    };

    auto zoom = [&](double lo, double f_lo, double d_lo, double hi, double f_hi) {
      for (int z = 0; z < opts.max_line_search && !accepted; ++z) {
        const double t = interpolate(lo, f_lo, d_lo, hi, f_hi);
        Point pt = eval_at(t);
        const double dt = pt.g.dot(dir);
        if (pt.f > f_at + kC1 * t * d0 || pt.f >= f_lo) {
          hi = t;
          f_hi = pt.f;
        } else if (std::abs(dt) <= -kC2 * d0) {
          step = t;
          p_new = std::move(pt);
          accepted = true;
        } else {
          if (dt * (hi - lo) >= 0.0) {
            hi = lo;
            f_hi = f_lo;
          }
          lo = t;
          f_lo = pt.f;
          d_lo = dt;
        }
        if (std::abs(hi - lo) < 1e-16) break;
      }
    };

    for (int ls = 0; ls < opts.max_line_search && !accepted; ++ls) {
      Point pt = eval_at(step);
      const double dt = pt.g.dot(dir);
      if (pt.f > f_at + kC1 * step * d0 || (ls > 0 && pt.f >= prev_f)) {
        zoom(prev_step, prev_f, prev_d, step, pt.f);
        break;
      }
      if (std::abs(dt) <= -kC2 * d0) {
        p_new = std::move(pt);
        accepted = true;
        break;
      }
      if (dt >= 0.0) {
        zoom(step, pt.f, dt, prev_step, prev_f);
        break;
      }
      prev_step = step;
      prev_f = pt.f;
      prev_d = dt;
      step *= 2.0;
    }

    if (!accepted) break;  // line search exhausted; best iterate stands

    x_new = x + step * dir;
    const RVector s = x_new - x;
    const RVector y = p_new.g - g;
    const double sy = s.dot(y);
    if (sy > 1e-10 * s.norm() * y.norm()) {
      s_hist.push_back(s);
      y_hist.push_back(y);
      rho_hist.push_back(1.0 / sy);
      if (static_cast<int>(s_hist.size()) > opts.memory) {
        s_hist.pop_front();
        y_hist.pop_front();
        rho_hist.pop_front();
      }
    }

    x = std::move(x_new);
    f = p_new.f;
    g = std::move(p_new.g);
    update_best(x, f, iter + 1);
  }

  if (f < best.f) {
    best.x = x;
    best.f = f;
  }
  best.iterations = iter;
  if (!best.converged && iter < opts.max_iterations) {
    // stopped early: re-check convergence at the final point
    best.converged = g.cwiseAbs().maxCoeff() <= opts.gradient_tolerance;
  }
  return best;
}

}  // namespace usynth
