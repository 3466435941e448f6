#include "trapped_pair/wavefun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "trapped_pair/constants.hpp"
#include "trapped_pair/quadrature.hpp"
#include "trapped_pair/specfun.hpp"

namespace tpair::wavefun {

namespace {

constexpr int series_cap = 5000;
constexpr double pi_3_2 = pi * sqrt_pi;

const char* rep_names[] = {"axial_series", "radial_series", "integral",
                           "q1d_bound",    "q2d_bound",     "q1d_excited",
                           "q2d_excited"};

// Accumulator for series term = kernel * osc where the kernel is positive
// and strictly decreasing once past the pole region and osc merely
// oscillates with a slowly varying envelope. Convergence is declared from
// kernel times the recent envelope, so a single zero of osc cannot fake it.
struct series_acc {
  double sum = 0.0;
  double max_term = 0.0;
  double osc_env = 0.0;
  double osc_win[8] = {};
  int n = 0;

  // kernel_safe: kernel value is positive-decreasing from here on
  bool add(double kernel, double osc, bool kernel_safe, double tol) {
    double term = kernel * osc;
    sum += term;
    max_term = std::max(max_term, std::abs(term));
    osc_win[n % 8] = std::abs(osc);
    ++n;
    if (!kernel_safe || n < 9) return false;
    osc_env = 0.0;
    for (double v : osc_win) osc_env = std::max(osc_env, v);
    double scale = std::max(std::abs(sum), 1e-3 * max_term);
    return kernel * std::max(osc_env, 1e-3) <= tol * scale;
  }
};

bool valid_point(double rho, double z) {
  return std::isfinite(rho) && std::isfinite(z) && rho >= 0.0;
}

expected<double> check_inputs(shifted_energy energy, double rho, double z,
                              const trap_geometry& trap, double tol) {
  if (!trap.valid()) return error{errc::invalid_argument, trap.eta};
  if (!valid_point(rho, z)) return error{errc::invalid_argument, rho};
  if (!std::isfinite(energy.value))
    return error{errc::invalid_argument, energy.value};
  if (!(tol > 0.0)) return error{errc::invalid_argument, tol};
  return 0.0;
}

}  // namespace

const char* psi_rep_name(psi_rep rep) noexcept {
  return rep_names[static_cast<int>(rep)];
}

expected<wavefun_eval> psi_axial_series(shifted_energy energy, double rho,
                                        double z, const trap_geometry& trap,
                                        double tol) {
  auto chk = check_inputs(energy, rho, z, trap, tol);
  if (!chk.ok()) return chk.err();
  const double eta = trap.eta;
  const double x = eta * rho * rho;
  const double zz = z * z;
  const double pref = eta / (2.0 * pi_3_2) * std::exp(-0.5 * (x + zz));

  series_acc acc;
  bool done = false;
  double l_prev = 0.0, l_cur = 1.0;
  for (int m = 0; m <= series_cap && !done; ++m) {
    double a = eta * m - 0.5 * energy.value;
    auto gu = specfun::gamma_u_half(a, zz);
    if (!gu.ok()) return gu.err();
    done = acc.add(gu.value().value, l_cur, a > 1.0, tol);
    double l_next = ((2.0 * m + 1.0 - x) * l_cur - m * l_prev) / (m + 1.0);
    l_prev = l_cur;
    l_cur = l_next;
  }
  if (!done) return error{errc::convergence_error, rho};
  return wavefun_eval{rho, z, pref * acc.sum, psi_rep::axial_series};
}

expected<wavefun_eval> psi_radial_series(shifted_energy energy, double rho,
                                         double z, const trap_geometry& trap,
                                         double tol) {
  auto chk = check_inputs(energy, rho, z, trap, tol);
  if (!chk.ok()) return chk.err();
  if (!(rho > 0.0)) return error{errc::domain_error, rho};
  const double eta = trap.eta;
  const double x = eta * rho * rho;
  const double zz = z * z;
  const double pref = std::exp(-0.5 * (x + zz)) / (2.0 * pi_3_2);

  series_acc acc;
  bool done = false;
  // h_n = H_n(z)/sqrt(2^n n!), advanced two steps per term; w_k cumulates
  // the central-binomial weight so that H_{2k}/(2^{2k} k!) = h_{2k} sqrt(w_k)
  double h_prev = 1.0;
  double h_cur = sqrt_2 * z;
  double w = 1.0;
  double sign = 1.0;
  for (int k = 0; k <= series_cap && !done; ++k) {
    double c = (k - 0.5 * energy.value) / eta;
    auto gu = specfun::gamma_u_one(c, x);
    if (!gu.ok()) return gu.err();
    done = acc.add(gu.value().value, sign * h_prev * std::sqrt(w), c > 1.0,
                   tol);
    for (int n = 2 * k + 1; n <= 2 * k + 2; ++n) {
      double h_next =
          std::sqrt(2.0 / (n + 1.0)) * z * h_cur -
          std::sqrt(n / (n + 1.0)) * h_prev;
      h_prev = h_cur;
      h_cur = h_next;
    }
    w *= (2.0 * k + 1.0) / (2.0 * k + 2.0);
    sign = -sign;
  }
  if (!done) return error{errc::convergence_error, rho};
  return wavefun_eval{rho, z, pref * acc.sum, psi_rep::radial_series};
}

expected<wavefun_eval> psi_bound_integral(shifted_energy energy, double rho,
                                          double z, const trap_geometry& trap,
                                          double tol) {
  auto chk = check_inputs(energy, rho, z, trap, tol);
  if (!chk.ok()) return chk.err();
  if (!(energy.value < 0.0)) return error{errc::domain_error, energy.value};
  if (rho == 0.0 && z == 0.0) return error{errc::domain_error, 0.0};
  const double eta = trap.eta;
  const double x = eta * rho * rho;
  const double zz = z * z;
  const double e_tot = energy.value + trap.zero_point();

  auto ln_sinh = [](double s) {
    return s + std::log1p(-std::exp(-2.0 * s)) - ln_2;
  };
  auto coth = [](double s) { return 1.0 + 2.0 / std::expm1(2.0 * s); };
  auto f = [&](double t) {
    double lg = e_tot * t - 0.5 * zz * coth(t) - 0.5 * x * coth(eta * t) -
                0.5 * ln_sinh(t) - ln_sinh(eta * t);
    return std::exp(lg);
  };
  auto q = quadrature::integrate_exp_sinh(f, tol);
  if (!q.converged) return error{errc::convergence_error, rho};
  double pref = eta / std::pow(2.0 * pi, 1.5);
  return wavefun_eval{rho, z, pref * q.value, psi_rep::integral};
}

expected<wavefun_eval> psi_eval(shifted_energy energy, double rho, double z,
                                const trap_geometry& trap, double tol) {
  // term counts scale as 1/(eta z^2) for the axial series and 1/rho^2 for
  // the radial one; pick the cheaper, fall back to the other
  bool near_axis = rho < std::abs(z) * std::sqrt(trap.eta);
  auto first = near_axis ? psi_axial_series(energy, rho, z, trap, tol)
                         : psi_radial_series(energy, rho, z, trap, tol);
  if (first.ok()) return first;
  auto second = near_axis ? psi_radial_series(energy, rho, z, trap, tol)
                          : psi_axial_series(energy, rho, z, trap, tol);
  if (second.ok()) return second;
  return first;
}

expected<wavefun_eval> psi_normalized(shifted_energy energy, double rho,
                                      double z, const trap_geometry& trap,
                                      double tol) {
  auto psi = psi_eval(energy, rho, z, trap, tol);
  if (!psi.ok()) return psi;
  auto n = norm_axial(energy, trap, tol);
  if (!n.ok()) return n.err();
  psi.value().value /= std::sqrt(n.value().n_inv_sq);
  return psi;
}

expected<wavefun_eval> psi_q1d_bound(shifted_energy energy, double rho,
                                     double z, const trap_geometry& trap,
                                     double tol) {
  auto chk = check_inputs(energy, rho, z, trap, tol);
  if (!chk.ok()) return chk.err();
  if (!(energy.value < 0.0)) return error{errc::domain_error, energy.value};
  const double eta = trap.eta;
  const double x = eta * rho * rho;
  const double pref = eta * std::exp(-0.5 * x) / (2.0 * pi);

  series_acc acc;
  bool done = false;
  double l_prev = 0.0, l_cur = 1.0;
  for (int m = 0; m <= series_cap && !done; ++m) {
    double kappa = std::sqrt(-0.5 * energy.value + m * eta);
    done = acc.add(std::exp(-2.0 * std::abs(z) * kappa) / kappa, l_cur, true,
                   tol);
    double l_next = ((2.0 * m + 1.0 - x) * l_cur - m * l_prev) / (m + 1.0);
    l_prev = l_cur;
    l_cur = l_next;
  }
  if (!done) return error{errc::convergence_error, rho};
  return wavefun_eval{rho, z, pref * acc.sum, psi_rep::q1d_bound};
}

expected<wavefun_eval> psi_q2d_bound(shifted_energy energy, double rho,
                                     double z, const trap_geometry& trap,
                                     double tol) {
  auto chk = check_inputs(energy, rho, z, trap, tol);
  if (!chk.ok()) return chk.err();
  if (!(energy.value < 0.0)) return error{errc::domain_error, energy.value};
  if (!(rho > 0.0)) return error{errc::domain_error, rho};
  const double pref = std::exp(-0.5 * z * z) / pi_3_2;

  series_acc acc;
  bool done = false;
  // only even Hermite indices survive; h_{2j}(0) = (-1)^j sqrt(w_j)
  double h_prev = 1.0;
  double h_cur = sqrt_2 * z;
  double w = 1.0;
  double sign = 1.0;
  for (int j = 0; j <= series_cap && !done; ++j) {
    double arg = rho * std::sqrt(4.0 * j - 2.0 * energy.value);
    auto k0 = specfun::bessel_k0(arg);
    if (!k0.ok()) return k0.err();
    done = acc.add(k0.value().value, sign * std::sqrt(w) * h_prev, true, tol);
    for (int n = 2 * j + 1; n <= 2 * j + 2; ++n) {
      double h_next =
          std::sqrt(2.0 / (n + 1.0)) * z * h_cur -
          std::sqrt(n / (n + 1.0)) * h_prev;
      h_prev = h_cur;
      h_cur = h_next;
    }
    w *= (2.0 * j + 1.0) / (2.0 * j + 2.0);
    sign = -sign;
  }
  if (!done) return error{errc::convergence_error, rho};
  return wavefun_eval{rho, z, pref * acc.sum, psi_rep::q2d_bound};
}

expected<wavefun_eval> psi_q1d_excited(shifted_energy energy, double rho,
                                       double z, const trap_geometry& trap) {
  auto chk = check_inputs(energy, rho, z, trap, 1e-10);
  if (!chk.ok()) return chk.err();
  const double eta = trap.eta;
  const double x = eta * rho * rho;
  auto gu = specfun::gamma_u_half(-0.5 * energy.value, z * z);
  if (!gu.ok()) return gu.err();
  double v = eta / (2.0 * pi_3_2) * std::exp(-0.5 * (x + z * z)) *
             gu.value().value;
  return wavefun_eval{rho, z, v, psi_rep::q1d_excited};
}

expected<wavefun_eval> psi_q2d_excited(shifted_energy energy, double rho,
                                       double z, const trap_geometry& trap) {
  auto chk = check_inputs(energy, rho, z, trap, 1e-10);
  if (!chk.ok()) return chk.err();
  if (!(rho > 0.0)) return error{errc::domain_error, rho};
  const double eta = trap.eta;
  const double x = eta * rho * rho;
  auto gu = specfun::gamma_u_one(-0.5 * energy.value / eta, x);
  if (!gu.ok()) return gu.err();
  double v = std::exp(-0.5 * (x + z * z)) / (2.0 * pi_3_2) *
             gu.value().value;
  return wavefun_eval{rho, z, v, psi_rep::q2d_excited};
}

namespace {

// asymptotic ratio Gamma(v)/Gamma(v+1/2) for huge v, immune to the
// argument collision v == v + 1/2 in double precision
double rhat_asym(double v) {
  return (1.0 + 0.125 / v + 0.0078125 / (v * v)) / std::sqrt(v);
}

// beta(2a) = [psi(a+1/2) - psi(a)]/2 for huge a
double beta2_asym(double a) {
  double p = a * (a + 0.5);
  return 0.5 *
         (std::log1p(0.5 / a) + 0.25 / p + (2.0 * a + 0.5) / (24.0 * p * p));
}

// m-th term of the transverse-channel normalization sum, prefactor excluded
expected<double> n1_term(double a) {
  if (!(a < 1e30)) return 0.0;
  if (a > 1e8) return rhat_asym(a) * beta2_asym(a);
  auto r = specfun::gamma_ratio(a, a + 0.5);
  if (!r.ok()) return r.err();
  auto b = specfun::beta_psi(2.0 * a);
  if (!b.ok()) return b.err();
  return r.value().value * b.value().value;
}

// k-th term of the axial-channel normalization sum, prefactor excluded:
// w_k zetaH(2, c), w_k = Gamma(k+1/2)/(sqrt(pi) Gamma(k+1))
expected<double> n2_term(double k, double u0, double eta) {
  double c = (k + u0) / eta;
  if (!(k < 1e30) || !(c < 1e30)) return 0.0;
  double w;
  if (k > 1e8) {
    w = rhat_asym(k + 0.5) / sqrt_pi;
  } else {
    auto r = specfun::gamma_ratio(k + 0.5, k + 1.0);
    if (!r.ok()) return r.err();
    w = r.value().value / sqrt_pi;
  }
  if (c > 1e8) {
    double ic = 1.0 / c;
    return w * ic * (1.0 + ic * (0.5 + ic / 6.0));
  }
  // zetaH(2, c) continues to negative non-integer c through the shift
  // zetaH(2, c) = zetaH(2, c + n) + sum_{i<n} (c+i)^{-2}
  double head = 0.0;
  while (c < 0.5) {
    if (std::abs(c) < 1e-10) return error{errc::pole_error, c};
    head += 1.0 / (c * c);
    c += 1.0;
  }
  auto zh = specfun::hurwitz_zeta(2.0, c);
  if (!zh.ok()) return zh.err();
  return w * (head + zh.value().value);
}

struct tail_sum {
  double value = 0.0;
  double err = 0.0;
  bool ok = false;
};

// Euler-Maclaurin tail of sum_{m>M} t(m) for smooth positive decreasing t
template <class Fn>
tail_sum em_tail(Fn&& t, double m_start) {
  auto val = [&t](double m) {
    auto r = t(m);
    return r.ok() ? r.value() : 0.0;
  };
  double a = m_start;
  auto q = quadrature::integrate_exp_sinh(
      [&val, a](double s) { return a * val(a * (1.0 + s)); }, 1e-12);
  if (!q.converged) return {};
  double h = 1e-2;
  double gp = (val(a + h) - val(a - h)) / (2.0 * h);
  return {q.value + 0.5 * val(a) - gp / 12.0, q.abs_err, true};
}

template <class TermFn>
expected<normalization> norm_sum(TermFn&& term, double pref, double step,
                                 double first_arg) {
  // run the explicit sum until the term argument is safely inside the
  // asymptotic m^{-3/2} regime, then attach an Euler-Maclaurin tail; a
  // second evaluation 16 terms later certifies the tail error
  double target = std::max(20.0, 20.0 * step) ;
  int m_explicit = static_cast<int>(
      std::ceil(std::max(10.0, (target - first_arg) / step)));
  m_explicit = std::min(m_explicit, 2000000);

  double sum = 0.0;
  for (int m = 0; m <= m_explicit; ++m) {
    auto t = term(static_cast<double>(m));
    if (!t.ok()) return t.err();
    sum += t.value();
  }
  auto tail1 = em_tail(term, m_explicit + 1.0);
  if (!tail1.ok) return error{errc::convergence_error, first_arg};
  double v1 = sum + tail1.value;

  for (int m = m_explicit + 1; m <= m_explicit + 16; ++m) {
    auto t = term(static_cast<double>(m));
    if (!t.ok()) return t.err();
    sum += t.value();
  }
  auto tail2 = em_tail(term, m_explicit + 17.0);
  if (!tail2.ok) return error{errc::convergence_error, first_arg};
  double v2 = sum + tail2.value;

  double n_inv_sq = pref * v2;
  double tail_bound =
      pref * (std::abs(v2 - v1) + tail2.err) + 8.0 * 1e-16 * std::abs(n_inv_sq);
  if (!(n_inv_sq > 0.0)) return error{errc::convergence_error, n_inv_sq};
  return normalization{n_inv_sq, m_explicit + 17, tail_bound};
}

}  // namespace

expected<normalization> norm_axial(shifted_energy energy,
                                   const trap_geometry& trap, double tol) {
  auto chk = check_inputs(energy, 0.0, 0.0, trap, tol);
  if (!chk.ok()) return chk.err();
  const double eta = trap.eta;
  const double u0 = -0.5 * energy.value;
  auto term = [eta, u0](double m) { return n1_term(u0 + eta * m); };
  return norm_sum(term, eta / (2.0 * pi), eta, u0);
}

expected<normalization> norm_radial(shifted_energy energy,
                                    const trap_geometry& trap, double tol) {
  auto chk = check_inputs(energy, 0.0, 0.0, trap, tol);
  if (!chk.ok()) return chk.err();
  const double eta = trap.eta;
  const double u0 = -0.5 * energy.value;
  auto term = [eta, u0](double k) { return n2_term(k, u0, eta); };
  return norm_sum(term, 1.0 / (4.0 * pi_3_2 * eta), 1.0, u0 / eta);
}

expected<double> norm_axial_term(shifted_energy energy,
                                 const trap_geometry& trap, int m) {
  if (!trap.valid()) return error{errc::invalid_argument, trap.eta};
  if (m < 0) return error{errc::invalid_argument, static_cast<double>(m)};
  auto t = n1_term(-0.5 * energy.value + trap.eta * m);
  if (!t.ok()) return t.err();
  return trap.eta / (2.0 * pi) * t.value();
}

expected<double> norm_radial_term(shifted_energy energy,
                                  const trap_geometry& trap, int k) {
  if (!trap.valid()) return error{errc::invalid_argument, trap.eta};
  if (k < 0) return error{errc::invalid_argument, static_cast<double>(k)};
  auto t = n2_term(static_cast<double>(k), -0.5 * energy.value, trap.eta);
  if (!t.ok()) return t.err();
  return t.value() / (4.0 * pi_3_2 * trap.eta);
}

}  // namespace tpair::wavefun
