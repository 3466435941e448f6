#ifndef TPAIR_QUADRATURE_HPP
#define TPAIR_QUADRATURE_HPP

#include <cmath>
#include <complex>
#include <cstddef>

#include "trapped_pair/errors.hpp"

namespace tpair::quadrature {

struct quad_result {
  double value = 0.0;
  double abs_err = 0.0;     // estimated, from the last level doubling
  std::size_t n_evals = 0;
  bool converged = false;
};

struct cquad_result {
  std::complex<double> value{0.0, 0.0};
  double abs_err = 0.0;
  std::size_t n_evals = 0;
  bool converged = false;
};

inline constexpr double default_tol = 1e-10;
inline constexpr std::size_t max_evals = 1u << 20;

// Integral over (0, inf) by the exp-sinh substitution t = exp((pi/2) sinh u)
// with trapezoidal sums and level doubling. Handles integrable endpoint
// singularities t^p (p > -1) at 0 and exponential or algebraic (faster than
// 1/t) decay at infinity.
quad_result integrate_exp_sinh(double (*f)(double, void*), void* ctx,
                               double tol = default_tol);

template <class F>
quad_result integrate_exp_sinh(F&& f, double tol = default_tol) {
  using Fn = std::decay_t<F>;
  auto thunk = [](double t, void* p) -> double { return (*static_cast<Fn*>(p))(t); };
  Fn fn = std::forward<F>(f);
  return integrate_exp_sinh(+thunk, &fn, tol);
}

// Primary entry point: integral of f over (0, inf). decay_rate documents the
// integrand's large-t exponential rate; it must be positive (or the tail
// algebraic-integrable), and the substitution needs no further tuning.
inline quad_result integrate_semi_infinite(double (*f)(double, void*),
                                           void* ctx, double decay_rate,
                                           double tol = default_tol) {
  if (!(decay_rate > 0.0)) return quad_result{};
  return integrate_exp_sinh(f, ctx, tol);
}

template <class F>
quad_result integrate_semi_infinite(F&& f, double decay_rate,
                                    double tol = default_tol) {
  if (!(decay_rate > 0.0)) return quad_result{};
  return integrate_exp_sinh(std::forward<F>(f), tol);
}

// complex-valued integrand over (0, inf), same transformation
cquad_result integrate_exp_sinh_complex(std::complex<double> (*f)(double, void*),
                                        void* ctx, double tol = default_tol);

template <class F>
cquad_result integrate_exp_sinh_complex(F&& f, double tol = default_tol) {
  using Fn = std::decay_t<F>;
  auto thunk = [](double t, void* p) -> std::complex<double> {
    return (*static_cast<Fn*>(p))(t);
  };
  Fn fn = std::forward<F>(f);
  return integrate_exp_sinh_complex(+thunk, &fn, tol);
}

// Integral over a finite interval [a, b] by tanh-sinh substitution; used for
// smooth or endpoint-singular finite-range integrands (oracle cross-checks,
// box normalization).
quad_result integrate_tanh_sinh(double (*f)(double, void*), void* ctx,
                                double a, double b, double tol = default_tol);

template <class F>
quad_result integrate_tanh_sinh(F&& f, double a, double b,
                                double tol = default_tol) {
  using Fn = std::decay_t<F>;
  auto thunk = [](double t, void* p) -> double { return (*static_cast<Fn*>(p))(t); };
  Fn fn = std::forward<F>(f);
  return integrate_tanh_sinh(+thunk, &fn, a, b, tol);
}

}  // namespace tpair::quadrature

#endif
