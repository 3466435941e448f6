#ifndef TPAIR_SPECFUN_HPP
#define TPAIR_SPECFUN_HPP

#include "trapped_pair/errors.hpp"

namespace tpair::specfun {

// value + a posteriori absolute-error estimate
struct fn_eval {
  double value = 0.0;
  double abs_err = 0.0;
};

// log |Gamma(x)| with the sign of Gamma(x); sign = 0 flags a pole
struct signed_log {
  double log = 0.0;
  int sign = 1;
};

signed_log log_gamma_signed(double x);

// Gamma(x)/Gamma(y). Poles of the numerator propagate as pole_error unless
// the denominator is also singular (ratio of residues) or only the
// denominator is singular (exact zero).
expected<fn_eval> gamma_ratio(double x, double y);

expected<fn_eval> digamma(double x);

// Hurwitz zeta, s > 0, s != 1, a > 0, Euler-Maclaurin with shifted start
expected<fn_eval> hurwitz_zeta(double s, double a);

// beta(x) = [psi((x+1)/2) - psi(x/2)] / 2
expected<fn_eval> beta_psi(double x);

// Kummer M(a, b, x) by direct series; requires b not a nonpositive integer
expected<fn_eval> kummer_m(double a, double b, double x);

// Gamma(a) * U(a, 1/2, w), w >= 0. Laplace-representation quadrature for
// a > 0 (uniformly accurate at large a), Kummer connection for a < 0.
expected<fn_eval> gamma_u_half(double a, double w);

// Gamma(c) * U(c, 1, y), y > 0
expected<fn_eval> gamma_u_one(double c, double y);

// U(a, 1, x), x > 0, any real a (logarithmic confluent case)
expected<fn_eval> hyper_u_b1(double a, double x);

// parabolic cylinder D_nu(x)
expected<fn_eval> parabolic_cylinder_d(double nu, double x);

expected<fn_eval> bessel_k0(double x);
expected<fn_eval> bessel_k1(double x);

double laguerre(int n, double x);
double hermite(int n, double x);

// H_{2k}(0) = (-2)^k (2k-1)!!
double hermite_even_at_zero(int k);

}  // namespace tpair::specfun

#endif
