#include "trapped_pair/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace tpair::quadrature {
namespace {

constexpr double half_pi = 1.57079632679489661923;

// Abscissa/weight of the exp-sinh rule at parameter u:
//   t(u) = exp((pi/2) sinh u),  dt/du = (pi/2) cosh(u) * t(u).
// Nodes with t underflowed to 0 or overflowed are skipped by the caller.
inline void exp_sinh_node(double u, double& t, double& w) {
  const double s = half_pi * std::sinh(u);
  t = std::exp(s);
  w = half_pi * std::cosh(u) * t;
}

// tanh-sinh on [-1, 1]: x(u) = tanh((pi/2) sinh u)
inline void tanh_sinh_node(double u, double& x, double& w) {
  const double s = half_pi * std::sinh(u);
  const double c = std::cosh(s);
  x = std::tanh(s);
  w = half_pi * std::cosh(u) / (c * c);
}

template <class V, class Eval>
struct de_driver {
  // Sums the exp-sinh trapezoid at levels h = h0 / 2^k until two consecutive
  // levels agree to tol (mixed absolute/relative).
  static bool run(Eval eval, double tol, double umin, double umax, V& out,
                  double& err, std::size_t& evals) {
    const double h0 = 0.5;
    const int max_level = 12;
    V total{};
    // level 0: nodes at multiples of h0
    {
      V s{};
      for (double u = umin; u <= umax + 1e-12; u += h0) {
        s += eval(u);
        ++evals;
      }
      total = s * h0;
    }
    double prev_err = abs(total) + 1.0;
    for (int level = 1; level <= max_level; ++level) {
      const double h = h0 / double(1 << level);
      // new nodes at odd multiples of h
      V s{};
      for (double u = umin + h; u <= umax + 1e-12; u += 2.0 * h) {
        s += eval(u);
        ++evals;
        if (evals > max_evals) {
          out = total;
          err = prev_err;
          return false;
        }
      }
      const V refined = total * 0.5 + s * h;
      const double diff = abs(refined - total);
      total = refined;
      const double scale = std::max(1.0, abs(total));
      // trapezoid error decays roughly quadratically in the level gap; the
      // last-level difference is a conservative bound
      err = diff;
      if (level >= 2 && diff <= tol * scale) {
        out = total;
        return true;
      }
      prev_err = diff;
    }
    out = total;
    return err <= 1e3 * tol * std::max(1.0, abs(total));
  }
};

// wrap complex so std::abs and operators work uniformly in the driver
struct cval {
  std::complex<double> v{};
  cval& operator+=(const cval& o) { v += o.v; return *this; }
  cval operator*(double s) const { return {v * s}; }
  cval operator+(const cval& o) const { return {v + o.v}; }
  cval operator-(const cval& o) const { return {v - o.v}; }
};
inline double abs(const cval& c) { return std::abs(c.v); }

struct rval {
  double v = 0.0;
  rval& operator+=(const rval& o) { v += o.v; return *this; }
  rval operator*(double s) const { return {v * s}; }
  rval operator+(const rval& o) const { return {v + o.v}; }
  rval operator-(const rval& o) const { return {v - o.v}; }
};
inline double abs(const rval& r) { return std::abs(r.v); }

}  // namespace

quad_result integrate_exp_sinh(double (*f)(double, void*), void* ctx, double tol) {
  quad_result res;
  // u-range: t spans exp(+-(pi/2) sinh u); |u| <= 6.8 covers t in
  // [1e-300, 1e+300] far beyond double range of any integrable contribution
  const double umin = -6.8, umax = 6.8;
  auto eval = [&](double u) -> rval {
    double t, w;
    exp_sinh_node(u, t, w);
    if (t == 0.0 || !std::isfinite(w)) return {0.0};
    const double fv = f(t, ctx);
    if (!std::isfinite(fv)) return {0.0};
    return {fv * w};
  };
  rval out{};
  double err = 0.0;
  res.converged = de_driver<rval, decltype(eval)>::run(eval, tol, umin, umax,
                                                       out, err, res.n_evals);
  res.value = out.v;
  res.abs_err = err;
  return res;
}

cquad_result integrate_exp_sinh_complex(std::complex<double> (*f)(double, void*),
                                        void* ctx, double tol) {
  cquad_result res;
  const double umin = -6.8, umax = 6.8;
  auto eval = [&](double u) -> cval {
    double t, w;
    exp_sinh_node(u, t, w);
    if (t == 0.0 || !std::isfinite(w)) return {{0.0, 0.0}};
    const std::complex<double> fv = f(t, ctx);
    if (!std::isfinite(fv.real()) || !std::isfinite(fv.imag())) return {{0.0, 0.0}};
    return {fv * w};
  };
  cval out{};
  double err = 0.0;
  res.converged = de_driver<cval, decltype(eval)>::run(eval, tol, umin, umax,
                                                       out, err, res.n_evals);
  res.value = out.v;
  res.abs_err = err;
  return res;
}

quad_result integrate_tanh_sinh(double (*f)(double, void*), void* ctx,
                                double a, double b, double tol) {
  quad_result res;
  if (!(b > a)) {
    res.converged = (b == a);
    return res;
  }
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  const double umin = -4.0, umax = 4.0;
  auto eval = [&](double u) -> rval {
    double x, w;
    tanh_sinh_node(u, x, w);
    const double t = mid + half * x;
    if (t <= a || t >= b) return {0.0};  // clamp roundoff at endpoints
    const double fv = f(t, ctx);
    if (!std::isfinite(fv)) return {0.0};
    return {fv * w * half};
  };
  rval out{};
  double err = 0.0;
  res.converged = de_driver<rval, decltype(eval)>::run(eval, tol, umin, umax,
                                                       out, err, res.n_evals);
  res.value = out.v;
  res.abs_err = err;
  return res;
}

}  // namespace tpair::quadrature
