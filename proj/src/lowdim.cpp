#include "trapped_pair/lowdim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bracket_root.hpp"
#include "trapped_pair/constants.hpp"
#include "trapped_pair/fcal.hpp"
#include "trapped_pair/specfun.hpp"

namespace tpair::lowdim {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

double phi_zero() {
  static const double v = [] {
    auto r = fcal::phi_eval(0.0);
    return r.ok() ? r.value() : 1.9377897837407080;
  }();
  return v;
}

bool near_integer(double v) {
  return std::abs(v - std::round(v)) < 1e-9 * std::max(1.0, std::abs(v));
}

expected<double> ratio_1d(double u) {
  auto r = specfun::gamma_ratio(u, u + 0.5);
  if (!r.ok()) return r.err();
  return r.value().value;
}

}  // namespace

a1d a1d_static(double a_inv, const trap_geometry& trap) {
  double eta = trap.eta;
  return a1d{-a_inv / (2.0 * eta) - zeta_half / (2.0 * std::sqrt(eta)), false,
             std::nullopt};
}

expected<a1d> a1d_energy_dependent(double a_inv, shifted_energy energy,
                                   const trap_geometry& trap) {
  if (!trap.valid()) return error{errc::invalid_argument, trap.eta};
  double eta = trap.eta;
  double arg = 1.0 - energy.value / (2.0 * eta);
  if (!(arg > 0.0)) {
    if (near_integer(arg)) return error{errc::pole_error, arg};
    return error{errc::domain_error, arg};
  }
  auto z = specfun::hurwitz_zeta(0.5, arg);
  if (!z.ok()) return z.err();
  double v = -a_inv / (2.0 * eta) - z.value().value / (2.0 * std::sqrt(eta));
  return a1d{v, true, energy};
}

expected<shifted_energy> solve_1d_branch(const a1d& a, int branch, double tol) {
  if (branch < 0) return error{errc::invalid_argument, static_cast<double>(branch)};
  if (!(tol > 0.0)) return error{errc::invalid_argument, tol};
  double target = 2.0 * a.value;
  double lo, hi;
  if (branch == 0) {
    if (!(target > 0.0)) return error{errc::no_root, target};
    lo = 0.0;
    hi = std::max(1.0, 4.0 / (target * target));
    for (int i = 0; i < 200; ++i) {
      auto g = ratio_1d(hi);
      if (!g.ok()) return g.err();
      if (g.value() < target) break;
      hi *= 2.0;
      if (i == 199) return error{errc::no_root, target};
    }
  } else {
    lo = -branch;
    hi = 1.0 - branch;
  }
  auto root = detail::bracket_root(ratio_1d, lo, hi, target, tol,
                                   /*decreasing=*/true);
  if (!root.ok()) return root.err();
  return shifted_energy{-2.0 * root.value().x};
}

expected<std::vector<shifted_energy>> solve_1d(const a1d& a, int n_roots,
                                               double tol) {
  if (n_roots < 0) return error{errc::invalid_argument, static_cast<double>(n_roots)};
  std::vector<shifted_energy> out;
  out.reserve(static_cast<std::size_t>(n_roots));
  for (int j = a.value > 0.0 ? 0 : 1; static_cast<int>(out.size()) < n_roots;
       ++j) {
    auto r = solve_1d_branch(a, j, tol);
    if (!r.ok()) return r.err();
    out.push_back(r.value());
  }
  return out;
}

expected<shifted_energy> bound_state_q1d(double a_inv,
                                         const trap_geometry& trap,
                                         double tol) {
  if (!trap.valid()) return error{errc::invalid_argument, trap.eta};
  double eta = trap.eta;
  double target = -a_inv / std::sqrt(eta);
  auto fn = [](double s) -> expected<double> {
    auto z = specfun::hurwitz_zeta(0.5, s);
    if (!z.ok()) return z.err();
    return z.value().value;
  };
  double hi = std::max(1.0, 0.25 * target * target + 2.0);
  for (int i = 0; i < 200; ++i) {
    auto g = fn(hi);
    if (!g.ok()) return g.err();
    if (g.value() < target) break;
    hi *= 2.0;
    if (i == 199) return error{errc::no_root, a_inv};
  }
  auto root = detail::bracket_root(fn, 0.0, hi, target, tol,
                                   /*decreasing=*/true);
  if (!root.ok()) return root.err();
  return shifted_energy{-2.0 * eta * root.value().x};
}

a2d a2d_static(double a_inv) {
  double v = std::exp(0.5 * phi_zero() - 0.5 * sqrt_pi * a_inv) / sqrt_2;
  return a2d{v, false, std::nullopt};
}

expected<a2d> a2d_energy_dependent(double a_inv, shifted_energy energy,
                                   const trap_geometry& trap) {
  if (!trap.valid()) return error{errc::invalid_argument, trap.eta};
  double x = -0.5 * energy.value;
  if (!(x > -1.0)) return error{errc::domain_error, x};
  auto p = fcal::phi_eval(x);
  if (!p.ok()) return p.err();
  double v = std::exp(0.5 * p.value() - 0.5 * sqrt_pi * a_inv) / sqrt_2;
  return a2d{v, true, energy};
}

expected<shifted_energy> solve_2d_branch(const a2d& a,
                                         const trap_geometry& trap, int branch,
                                         double tol) {
  if (!trap.valid()) return error{errc::invalid_argument, trap.eta};
  if (branch < 0) return error{errc::invalid_argument, static_cast<double>(branch)};
  if (!(a.value > 0.0)) return error{errc::invalid_argument, a.value};
  double eta = trap.eta;
  double target = -std::log(2.0 * a.value * a.value * eta);
  auto fn = [](double u) -> expected<double> {
    auto d = specfun::digamma(u);
    if (!d.ok()) return d.err();
    return d.value().value;
  };
  double lo, hi;
  if (branch == 0) {
    lo = 0.0;
    hi = std::max(2.0, std::exp(target) + 1.0);
    for (int i = 0; i < 200; ++i) {
      auto g = fn(hi);
      if (!g.ok()) return g.err();
      if (g.value() > target) break;
      hi *= 2.0;
      if (i == 199) return error{errc::no_root, target};
    }
  } else {
    lo = -branch;
    hi = 1.0 - branch;
  }
  auto root = detail::bracket_root(fn, lo, hi, target, tol,
                                   /*decreasing=*/false);
  if (!root.ok()) return root.err();
  return shifted_energy{-2.0 * eta * root.value().x};
}

expected<std::vector<shifted_energy>> solve_2d(const a2d& a,
                                               const trap_geometry& trap,
                                               int n_roots, double tol) {
  if (n_roots < 0) return error{errc::invalid_argument, static_cast<double>(n_roots)};
  std::vector<shifted_energy> out;
  out.reserve(static_cast<std::size_t>(n_roots));
  for (int j = 0; static_cast<int>(out.size()) < n_roots; ++j) {
    auto r = solve_2d_branch(a, trap, j, tol);
    if (!r.ok()) return r.err();
    out.push_back(r.value());
  }
  return out;
}

expected<double> g2d_coupling(double a_inv, double k) {
  if (!(k > 0.0)) return error{errc::invalid_argument, k};
  double den = sqrt_pi * a_inv - phi_zero() - std::log(0.5 * k * k);
  double scale = std::max({1.0, std::abs(sqrt_pi * a_inv),
                           std::abs(phi_zero() + std::log(0.5 * k * k))});
  if (std::abs(den) < 1e-12 * scale) return error{errc::pole_error, a_inv};
  return 2.0 * pi / den;
}

namespace {

// EnQ2D residual: ln(eta) + Phi(x) + psi(x/eta), increasing between poles
expected<double> q2d_residual(double x, double eta) {
  auto p = fcal::phi_eval(x);
  if (!p.ok()) return p.err();
  auto d = specfun::digamma(x / eta);
  if (!d.ok()) return d.err();
  return std::log(eta) + p.value() + d.value().value;
}

}  // namespace

expected<std::vector<shifted_energy>> solve_quasi2d_excited(
    double a_inv, const trap_geometry& trap, int n_roots, double tol) {
  if (!trap.valid()) return error{errc::invalid_argument, trap.eta};
  if (n_roots < 0) return error{errc::invalid_argument, static_cast<double>(n_roots)};
  double eta = trap.eta;
  double target = sqrt_pi * a_inv;
  std::vector<shifted_energy> out;
  for (int j = 1; static_cast<int>(out.size()) < n_roots; ++j) {
    double lo = -j * eta;
    double hi = -(j - 1) * eta;
    if (lo <= -1.0 + 1e-12) break;  // Phi continuation ends at x = -1
    auto root = detail::bracket_root(
        [eta](double x) { return q2d_residual(x, eta); }, lo, hi, target, tol,
        /*decreasing=*/false);
    if (!root.ok()) return root.err();
    out.push_back(shifted_energy{-2.0 * root.value().x});
  }
  if (out.empty()) return error{errc::domain_error, eta};
  return out;
}

namespace {

// merged pole lattice of the composed quasi-1D condition, descending in x
std::vector<double> q1d_lattice(double eta, int need) {
  double bound = (need + 2) * std::max(1.0, eta) + 1.0;
  std::vector<double> poles;
  for (int j = 0; j <= static_cast<int>(bound); ++j)
    poles.push_back(-static_cast<double>(j));
  for (int m = 1; m * eta <= bound; ++m) poles.push_back(-m * eta);
  std::sort(poles.begin(), poles.end(), std::greater<double>());
  std::vector<double> merged;
  for (double p : poles)
    if (merged.empty() || merged.back() - p > 1e-9) merged.push_back(p);
  return merged;
}

}  // namespace

expected<shifted_energy> solve_q1d_energy_dependent(double a_inv, int branch,
                                                    const trap_geometry& trap,
                                                    double tol) {
  if (!trap.valid()) return error{errc::invalid_argument, trap.eta};
  if (branch < 0) return error{errc::invalid_argument, static_cast<double>(branch)};
  if (!(tol > 0.0)) return error{errc::invalid_argument, tol};
  auto poles = q1d_lattice(trap.eta, branch);
  if (static_cast<int>(poles.size()) <= branch)
    return error{errc::convergence_error, static_cast<double>(branch)};
  double lo = poles[branch];
  double hi = branch == 0 ? inf : poles[branch - 1];
  double target = -sqrt_pi * a_inv;
  fcal::f_context ctx(trap);

  // damped fixed point: E -> (E + En1D(a1DE(E)))/2
  double e_cur;
  {
    auto seed = solve_1d_branch(a1d_static(a_inv, trap), branch, tol);
    if (seed.ok())
      e_cur = seed.value().value;
    else
      e_cur = branch == 0 ? -0.2 : -(lo + hi);
  }
  bool settled = false;
  for (int it = 0; it < 60; ++it) {
    auto ae = a1d_energy_dependent(a_inv, shifted_energy{e_cur}, trap);
    if (!ae.ok()) break;
    auto en = solve_1d_branch(ae.value(), branch, tol);
    if (!en.ok()) break;
    double e_next = 0.5 * (e_cur + en.value().value);
    bool done = std::abs(e_next - e_cur) <=
                0.25 * tol * std::max(1.0, std::abs(e_cur));
    e_cur = e_next;
    if (done) {
      settled = true;
      break;
    }
    double x = -0.5 * e_cur;
    if (x <= lo || (branch > 0 && x >= hi)) break;
  }
  if (settled) {
    auto fv = fcal::f_quasi1d(-0.5 * e_cur, ctx);
    if (fv.ok() && std::abs(fv.value().value - target) <=
                       1e-6 * std::max(1.0, std::abs(target)))
      return shifted_energy{e_cur};
  }

  // fallback: root of the composed residual on the same bracket
  auto fn = [&ctx](double x) -> expected<double> {
    auto r = fcal::f_quasi1d(x, ctx);
    if (!r.ok()) return r.err();
    return r.value().value;
  };
  if (branch == 0) {
    double guess = 1.0;
    if (target < 0.0) guess = std::max(1.0, target * target / (4.0 * pi) * 1.5);
    hi = lo + guess;
    for (int i = 0; i < 200; ++i) {
      auto g = fn(hi);
      if (!g.ok()) return g.err();
      if (g.value() < target) break;
      hi = lo + (hi - lo) * 2.0;
      if (i == 199) return error{errc::no_root, a_inv};
    }
  }
  auto root = detail::bracket_root(fn, lo, hi, target, tol,
                                   /*decreasing=*/true);
  if (!root.ok()) return root.err();
  return shifted_energy{-2.0 * root.value().x};
}

expected<shifted_energy> solve_q2d_energy_dependent(double a_inv, int branch,
                                                    const trap_geometry& trap,
                                                    double tol) {
  if (!trap.valid()) return error{errc::invalid_argument, trap.eta};
  if (branch < 0) return error{errc::invalid_argument, static_cast<double>(branch)};
  if (!(tol > 0.0)) return error{errc::invalid_argument, tol};
  double eta = trap.eta;
  double lo = -branch * eta;
  double hi = branch == 0 ? inf : -(branch - 1) * eta;
  if (branch > 0 && lo <= -1.0 + 1e-12) return error{errc::domain_error, lo};
  double target = sqrt_pi * a_inv;

  double e_cur;
  {
    auto seed = solve_2d_branch(a2d_static(a_inv), trap, branch, tol);
    if (seed.ok())
      e_cur = seed.value().value;
    else
      e_cur = branch == 0 ? -0.2 * eta : -(lo + hi);
  }
  bool settled = false;
  for (int it = 0; it < 60; ++it) {
    auto ae = a2d_energy_dependent(a_inv, shifted_energy{e_cur}, trap);
    if (!ae.ok()) break;
    auto en = solve_2d_branch(ae.value(), trap, branch, tol);
    if (!en.ok()) break;
    double e_next = 0.5 * (e_cur + en.value().value);
    bool done = std::abs(e_next - e_cur) <=
                0.25 * tol * std::max(1.0, std::abs(e_cur));
    e_cur = e_next;
    if (done) {
      settled = true;
      break;
    }
    double x = -0.5 * e_cur;
    if (x <= lo || (branch > 0 && x >= hi)) break;
  }
  if (settled) {
    auto rv = q2d_residual(-0.5 * e_cur, eta);
    if (rv.ok() &&
        std::abs(rv.value() - target) <= 1e-6 * std::max(1.0, std::abs(target)))
      return shifted_energy{e_cur};
  }

  auto fn = [eta](double x) { return q2d_residual(x, eta); };
  if (branch == 0) {
    double base = std::max(0.0, (target - std::log(eta)) / (2.0 * sqrt_pi));
    hi = std::max(1.0, base * base + 2.0);
    for (int i = 0; i < 200; ++i) {
      auto g = fn(hi);
      if (!g.ok()) return g.err();
      if (g.value() > target) break;
      hi *= 2.0;
      if (i == 199) return error{errc::no_root, a_inv};
    }
  }
  auto root = detail::bracket_root(fn, lo, hi, target, tol,
                                   /*decreasing=*/false);
  if (!root.ok()) return root.err();
  return shifted_energy{-2.0 * root.value().x};
}

double shallow_2d_binding(double a_inv) {
  return 2.0 * std::exp(-phi_zero()) * std::exp(sqrt_pi * a_inv);
}

}  // namespace tpair::lowdim
