#include "trapped_pair/fcal.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>

#include "trapped_pair/constants.hpp"
#include "trapped_pair/quadrature.hpp"
#include "trapped_pair/specfun.hpp"

namespace tpair::fcal {

namespace {

constexpr double eps = std::numeric_limits<double>::epsilon();

// log((1 - e^{-s})/s), stable for all s > 0
double log_phi(double s) {
  if (s <= 0.25) {
    double s2 = s * s;
    return -0.5 * s + s2 * (1.0 / 24.0 + s2 * (-1.0 / 2880.0 +
           s2 * (1.0 / 181440.0 - s2 / 9676800.0)));
  }
  return std::log(-std::expm1(-s)) - std::log(s);
}

struct kahan {
  double sum = 0.0, c = 0.0;
  void add(double v) {
    double y = v - c;
    double t = sum + y;
    c = (t - sum) - y;
    sum = t;
  }
};

// Gamma(v)/Gamma(v + 1/2) asymptotic coefficients: rhat(v) ~ v^{-1/2} sum c_j v^{-j}
constexpr double rhat_c[7] = {1.0,
                              1.0 / 8.0,
                              1.0 / 128.0,
                              -5.0 / 1024.0,
                              -21.0 / 32768.0,
                              399.0 / 262144.0,
                              869.0 / 4194304.0};

expected<spectral_result> series_impl(double x, double eta, double tol) {
  if (!(eta > 0.0)) return error{errc::invalid_argument, eta};
  constexpr double lift = 40.0;
  double nd = std::ceil((lift - x) / eta);
  long n_lead = nd > 1.0 ? static_cast<long>(nd) : 1;
  if (n_lead > 400000) {
    n_lead = 400000;
    if (x + n_lead * eta <= 0.5)
      n_lead = static_cast<long>(std::ceil((0.5 - x) / eta)) + 1;
  }

  kahan sum;
  double abs_acc = 0.0, term_err = 0.0;
  for (long n = 0; n < n_lead; ++n) {
    double v = x + n * eta;
    auto r = specfun::gamma_ratio(v, v + 0.5);
    if (!r.ok()) return r.err();
    double term = r.value().value - 1.0 / std::sqrt(eta * (n + 1.0));
    sum.add(term);
    abs_acc += std::abs(term);
    term_err += r.value().abs_err;
  }

  double q = static_cast<double>(n_lead) + x / eta;
  double sq_eta = std::sqrt(eta);
  auto zq = specfun::hurwitz_zeta(0.5, q);
  if (!zq.ok()) return zq.err();
  auto zn = specfun::hurwitz_zeta(0.5, static_cast<double>(n_lead) + 1.0);
  if (!zn.ok()) return zn.err();

  double tail = sq_eta * (zq.value().value - zn.value().value + zeta_half);
  double tail_err = sq_eta * (zq.value().abs_err + zn.value().abs_err);
  double ep = sq_eta;
  for (int j = 1; j <= 6; ++j) {
    ep /= eta;
    auto zj = specfun::hurwitz_zeta(0.5 + j, q);
    if (!zj.ok()) return zj.err();
    tail += rhat_c[j] * ep * zj.value().value;
    tail_err += std::abs(rhat_c[j]) * ep * zj.value().abs_err;
  }
  // remainder proxy: the first omitted asymptotic order
  auto zr = specfun::hurwitz_zeta(7.5, q);
  if (zr.ok()) tail_err += 2.0 * std::abs(rhat_c[6]) * (ep / eta) * zr.value().value;

  double value = eta * sqrt_pi * sum.sum + sqrt_pi * tail;
  double err = eta * sqrt_pi * (term_err + 4.0 * eps * abs_acc) +
               sqrt_pi * tail_err + 8.0 * eps * std::abs(value);
  (void)tol;
  return spectral_result{value, f_strategy::series, err};
}

}  // namespace

expected<spectral_result> f_integral(double x, const f_context& ctx) {
  double eta = ctx.trap.eta;
  if (!(eta > 0.0)) return error{errc::invalid_argument, eta};
  if (!(x > 0.0)) return error{errc::domain_error, x};
  auto integrand = [x, eta](double t) -> double {
    double lt = std::log(t);
    double arg = -x * t - 0.5 * log_phi(t) - log_phi(eta * t);
    double m = std::expm1(arg);
    if (!std::isfinite(m))
      return std::exp(arg - 1.5 * lt) - std::exp(-1.5 * lt);
    return std::exp(-1.5 * lt) * m;
  };
  auto q = quadrature::integrate_semi_infinite(integrand, x, ctx.tol);
  if (!q.converged) return error{errc::convergence_error, x};
  return spectral_result{q.value, f_strategy::integral, q.abs_err};
}

expected<spectral_result> f_series(double x, const f_context& ctx) {
  return series_impl(x, ctx.trap.eta, ctx.tol);
}

expected<spectral_result> f_recurrence(double x, int steps, const f_context& ctx) {
  double eta = ctx.trap.eta;
  if (!(eta > 0.0)) return error{errc::invalid_argument, eta};
  if (steps < 0) return error{errc::invalid_argument, static_cast<double>(steps)};
  kahan sum;
  double abs_acc = 0.0, term_err = 0.0;
  for (int i = 0; i < steps; ++i) {
    double v = x + i * eta;
    auto r = specfun::gamma_ratio(v, v + 0.5);
    if (!r.ok()) return r.err();
    sum.add(r.value().value);
    abs_acc += std::abs(r.value().value);
    term_err += r.value().abs_err;
  }
  auto base = series_impl(x + steps * eta, eta, ctx.tol);
  if (!base.ok()) return base;
  double value = eta * sqrt_pi * sum.sum + base.value().value;
  double err = eta * sqrt_pi * (term_err + 4.0 * eps * abs_acc) + base.value().abs_err;
  return spectral_result{value, f_strategy::recurrence, err};
}

expected<spectral_result> f_closed_cigar(double x, int n, double tol) {
  if (n < 1) return error{errc::invalid_argument, static_cast<double>(n)};
  if (n > 1 && !(x > 0.0)) return error{errc::domain_error, x};
  auto r = specfun::gamma_ratio(x, x - 0.5);
  if (!r.ok()) return r.err();
  double value = -2.0 * sqrt_pi * r.value().value;
  double err = 2.0 * sqrt_pi * r.value().abs_err;
  if (n == 1) return spectral_result{value, f_strategy::closed_cigar, err};

  for (int m = 1; 2 * m <= n; ++m) {
    if (2 * m == n) {
      auto f = [x](double t) -> double {
        double e = std::exp(-t);
        return std::exp(-x * t) / (std::sqrt(-std::expm1(-t)) * (1.0 + e));
      };
      auto q = quadrature::integrate_exp_sinh(f, tol);
      if (!q.converged) return error{errc::convergence_error, x};
      value += q.value;
      err += q.abs_err;
    } else {
      std::complex<double> w = std::polar(1.0, -2.0 * pi * m / n);
      auto f = [x, w](double t) -> std::complex<double> {
        double e = std::exp(-t);
        return std::exp(-x * t) /
               (std::sqrt(-std::expm1(-t)) * (1.0 - e * w));
      };
      auto q = quadrature::integrate_exp_sinh_complex(f, tol);
      if (!q.converged) return error{errc::convergence_error, x};
      value += 2.0 * q.value.real();
      err += 2.0 * q.abs_err;
    }
  }
  return spectral_result{value, f_strategy::closed_cigar, err};
}

expected<spectral_result> f_closed_pancake(double x, int n) {
  if (n < 1) return error{errc::invalid_argument, static_cast<double>(n)};
  kahan sum;
  double err = 0.0;
  for (int m = 0; m < n; ++m) {
    double v = x + static_cast<double>(m) / n;
    auto r = specfun::gamma_ratio(v, v - 0.5);
    if (!r.ok()) return r.err();
    sum.add(r.value().value);
    err += r.value().abs_err;
  }
  double pref = -2.0 * sqrt_pi / n;
  return spectral_result{pref * sum.sum, f_strategy::closed_pancake,
                         std::abs(pref) * err};
}

expected<spectral_result> f_quasi1d(double x, const f_context& ctx, q1d_order order) {
  double eta = ctx.trap.eta;
  if (!(eta > 0.0)) return error{errc::invalid_argument, eta};
  if (order == q1d_order::bare) {
    if (!(x > 0.0)) return error{errc::domain_error, x};
    auto z = specfun::hurwitz_zeta(0.5, x / eta);
    if (!z.ok()) return z.err();
    double s = std::sqrt(eta);
    return spectral_result{sqrt_pi * s * z.value().value, f_strategy::quasi_1d,
                           sqrt_pi * s * z.value().abs_err};
  }
  if (!(x > -eta)) return error{errc::domain_error, x};
  auto z = specfun::hurwitz_zeta(0.5, 1.0 + x / eta);
  if (!z.ok()) return z.err();
  auto r = specfun::gamma_ratio(x, x + 0.5);
  if (!r.ok()) return r.err();
  double s = std::sqrt(eta);
  double value = sqrt_pi * (s * z.value().value + eta * r.value().value);
  double err = sqrt_pi * (s * z.value().abs_err + eta * r.value().abs_err);
  return spectral_result{value, f_strategy::quasi_1d, err};
}

expected<double> phi_eval(double x) {
  if (!(x > -1.0)) return error{errc::domain_error, x};

  long m_end = 2000 + static_cast<long>(std::ceil(40.0 * std::max(0.0, x)));
  kahan sum;
  double w = 1.0;
  for (long k = 1; k <= m_end; ++k) {
    w *= (2.0 * k - 1.0) / (2.0 * k);
    double b = (k + 0.5) * std::log1p(-1.0 / (x + k + 1.0)) + 1.0;
    sum.add(w * b);
  }

  // far-tail bracket via its 1/v expansion; the log1p form is pure roundoff
  // noise once (k+1/2)/(x+k+1) rounds to 1
  auto g = [x](double k) -> double {
    // w_k = Gamma(k+1/2)/(sqrt(pi) Gamma(k+1)); asymptotic in v0 = k+1/2 is
    // exact to eps for k >= 2000 and immune to argument collision at huge k
    double u = 1.0 / (k + 0.5);
    double wk = std::sqrt(u / pi) *
                (rhat_c[0] + u * (rhat_c[1] + u * (rhat_c[2] +
                 u * (rhat_c[3] + u * rhat_c[4]))));
    double iv = 1.0 / (x + k + 0.5);
    double b = iv * (x + iv * (-1.0 / 12.0 +
               iv * (x / 12.0 + iv * (-1.0 / 80.0 +
               iv * (x / 80.0 - iv / 448.0)))));
    return wk * b;
  };
  double a = static_cast<double>(m_end) + 1.0;
  // int_a^inf g dk = a * int_0^inf g(a(1+s)) ds, so the rolloff sits at s ~ 1
  auto qi = quadrature::integrate_exp_sinh(
      [&g, a](double s) { return a * g(a * (1.0 + s)); }, 1e-12);
  if (!qi.converged) return error{errc::convergence_error, x};
  double h = 1e-3;
  double gp = (g(a + h) - g(a - h)) / (2.0 * h);
  double tail = qi.value + 0.5 * g(a) - gp / 12.0;

  return 2.0 - std::log1p(x) + 2.0 * (sum.sum + tail);
}

expected<spectral_result> f_quasi2d(double x, const f_context& ctx) {
  double eta = ctx.trap.eta;
  if (!(eta > 0.0)) return error{errc::invalid_argument, eta};
  auto phi = phi_eval(x);
  if (!phi.ok()) return phi.err();
  auto dg = specfun::digamma(x / eta);
  if (!dg.ok()) return dg.err();
  double value = -phi.value() - std::log(eta) - dg.value().value;
  double err = dg.value().abs_err + 1e-12 * (1.0 + std::abs(phi.value()));
  return spectral_result{value, f_strategy::quasi_2d, err};
}

expected<spectral_result> f_eval(double x, const f_context& ctx) {
  double eta = ctx.trap.eta;
  if (!(eta > 0.0)) return error{errc::invalid_argument, eta};

  if (ctx.strategy_override) {
    switch (*ctx.strategy_override) {
      case f_strategy::integral: return f_integral(x, ctx);
      case f_strategy::series: return f_series(x, ctx);
      case f_strategy::recurrence: {
        int steps = x > 0.0 ? 0 : static_cast<int>(std::ceil(-x / eta)) + 1;
        return f_recurrence(x, steps, ctx);
      }
      case f_strategy::closed_cigar: {
        int n = commensurate_integer(eta);
        if (n < 1 || eta < 1.0) return error{errc::invalid_argument, eta};
        return f_closed_cigar(x, n, ctx.tol);
      }
      case f_strategy::closed_pancake: {
        int n = commensurate_integer(eta);
        if (n < 1 || eta > 1.0) return error{errc::invalid_argument, eta};
        return f_closed_pancake(x, n);
      }
      case f_strategy::quasi_1d: return f_quasi1d(x, ctx);
      case f_strategy::quasi_2d: return f_quasi2d(x, ctx);
    }
  }

  int n = commensurate_integer(eta);
  if (n == 1) return f_closed_cigar(x, 1, ctx.tol);
  if (n > 1 && eta < 1.0) return f_closed_pancake(x, n);
  if (n > 1 && x > 0.0 && x <= 20.0) return f_closed_cigar(x, n, ctx.tol);
  if (x <= 0.0)
    return f_recurrence(x, static_cast<int>(std::ceil(-x / eta)) + 1, ctx);
  return f_series(x, ctx);
}

std::vector<f_pole> pole_lattice(const trap_geometry& trap, int count) {
  std::vector<f_pole> out;
  if (!(trap.eta > 0.0) || count <= 0) return out;
  double eta = trap.eta;
  double step = std::min(1.0, eta);
  double bound = step * (count + 1);

  for (;;) {
    std::vector<std::pair<double, int>> vals;  // (n*eta + j, j)
    for (long n = 0; n * eta <= bound; ++n)
      for (long j = 0; n * eta + j <= bound; ++j)
        vals.emplace_back(n * eta + j, static_cast<int>(j));
    std::sort(vals.begin(), vals.end());

    out.clear();
    std::size_t i = 0;
    while (i < vals.size()) {
      double v = vals[i].first;
      f_pole p;
      p.x = -v;
      p.multiplicity = 0;
      p.residue = 0.0;
      while (i < vals.size() && vals[i].first - v <= 1e-9) {
        int j = vals[i].second;
        double wj = 1.0;
        for (int t = 1; t <= j; ++t) wj *= (2.0 * t - 1.0) / (2.0 * t);
        p.residue += eta * wj;
        ++p.multiplicity;
        ++i;
      }
      out.push_back(p);
    }
    if (static_cast<int>(out.size()) >= count) {
      out.resize(count);
      return out;
    }
    bound *= 2.0;
  }
}

double nearest_pole_distance(double x, const trap_geometry& trap) {
  if (!(trap.eta > 0.0)) return std::numeric_limits<double>::infinity();
  if (x >= 0.0) return x;
  double v = -x;
  double eta = trap.eta;
  double best = std::numeric_limits<double>::infinity();
  long n_max = static_cast<long>(std::floor(v / eta)) + 1;
  if (n_max > 2000000) return std::min(1.0, eta) * 0.5;
  for (long n = 0; n <= n_max; ++n) {
    double rem = v - n * eta;
    if (rem < -0.5) break;
    double j = std::max(0.0, std::round(rem));
    best = std::min(best, std::abs(rem - j));
  }
  return best;
}

}  // namespace tpair::fcal
