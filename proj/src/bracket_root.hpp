#pragma once

#include <algorithm>
#include <cmath>
#include <limits>

#include "trapped_pair/errors.hpp"

namespace tpair::detail {

struct bracket_root_result {
  double x = 0.0;
  double residual = 0.0;
};

// Root of f(x) = target on the open bracket (lo, hi) where f is monotone and
// diverges toward both ends. f returns expected<double>. Endpoints are walked
// in geometrically until the target is straddled, then bisection interleaved
// with secant steps closes in.
template <class Fn>
expected<bracket_root_result> bracket_root(Fn&& f, double lo, double hi,
                                           double target, double tol,
                                           bool decreasing) {
  constexpr double eps = std::numeric_limits<double>::epsilon();
  double gap = hi - lo;
  double xl = 0.0, xr = 0.0, gl = 0.0, gr = 0.0;

  double dl = 0.25 * gap;
  bool ok_side = false;
  for (int i = 0; i < 12; ++i) {
    xl = lo + dl;
    auto g = f(xl);
    if (g.ok()) {
      double v = g.value();
      if (decreasing ? v > target : v < target) {
        gl = v;
        ok_side = true;
        break;
      }
    }
    dl *= 1e-3;
    if (dl < std::abs(lo) * 8.0 * eps + 1e-300) break;
  }
  if (!ok_side) return error{errc::no_root, lo};

  double dr = 0.25 * gap;
  ok_side = false;
  for (int i = 0; i < 12; ++i) {
    xr = hi - dr;
    if (xr <= xl) {
      dr *= 1e-3;
      continue;
    }
    auto g = f(xr);
    if (g.ok()) {
      double v = g.value();
      if (decreasing ? v < target : v > target) {
        gr = v;
        ok_side = true;
        break;
      }
    }
    dr *= 1e-3;
    if (dr < std::abs(hi) * 8.0 * eps + 1e-300) break;
  }
  if (!ok_side) return error{errc::no_root, hi};

  double x_best = xl, r_best = std::abs(gl - target);
  for (int it = 0; it < 200; ++it) {
    double xs = 0.5 * (xl + xr);
    if (it % 2 == 0) {
      double denom = gl - gr;
      if (denom != 0.0) {
        double cand = xl + (xr - xl) * (gl - target) / denom;
        if (cand > xl && cand < xr) xs = cand;
      }
    }
    auto g = f(xs);
    if (!g.ok()) return g.err();
    double v = g.value();
    double res = std::abs(v - target);
    if (res < r_best) {
      r_best = res;
      x_best = xs;
    }
    if (res <= tol * std::max(1.0, std::abs(target))) break;
    bool root_right = decreasing ? v > target : v < target;
    if (root_right) {
      xl = xs;
      gl = v;
    } else {
      xr = xs;
      gr = v;
    }
    if (xr - xl <= std::max(1e-12, 8.0 * eps * std::max(std::abs(xl), 1.0)))
      break;
  }
  return bracket_root_result{x_best, r_best};
}

}  // namespace tpair::detail
