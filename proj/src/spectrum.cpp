#include "trapped_pair/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bracket_root.hpp"
#include "parallel.hpp"
#include "trapped_pair/constants.hpp"
#include "trapped_pair/fcal.hpp"

namespace tpair::spectrum {

namespace {

constexpr double eps = std::numeric_limits<double>::epsilon();
constexpr double nan_gap = std::numeric_limits<double>::quiet_NaN();

expected<double> f_at(double x, const fcal::f_context& ctx) {
  auto r = fcal::f_eval(x, ctx);
  if (!r.ok()) return r.err();
  return r.value().value;
}

// a = 0 handled symbolically: the root degenerates onto a bracket end
expected<eigen_branch> zero_a_limit(double inv_a, int branch, double lo,
                                    double hi) {
  eigen_branch out;
  out.index = branch;
  out.pole_below = lo;
  out.pole_above = hi;
  if (inv_a > 0.0) {  // a -> 0+, target -inf, root at the upper pole
    if (branch == 0) return error{errc::no_root, inv_a};
    out.energy = shifted_energy{-2.0 * hi};
  } else {  // a -> 0-, target +inf, root at the lower pole
    out.energy = shifted_energy{-2.0 * lo};
  }
  return out;
}

}  // namespace

expected<eigen_branch> solve_branch_full(scattering_length inv_a, int branch,
                                         const trap_geometry& trap,
                                         double tol) {
  if (!trap.valid()) return error{errc::invalid_argument, trap.eta};
  if (branch < 0) return error{errc::invalid_argument, static_cast<double>(branch)};
  if (!(tol > 0.0)) return error{errc::invalid_argument, tol};

  auto lattice = fcal::pole_lattice(trap, branch + 1);
  if (static_cast<int>(lattice.size()) <= branch)
    return error{errc::convergence_error, static_cast<double>(branch)};
  double lo = lattice[branch].x;
  double hi = branch == 0 ? std::numeric_limits<double>::infinity()
                          : lattice[branch - 1].x;

  if (std::isnan(inv_a.inverse_a))
    return error{errc::invalid_argument, inv_a.inverse_a};
  if (std::isinf(inv_a.inverse_a))
    return zero_a_limit(inv_a.inverse_a, branch, lo, hi);

  double target = -sqrt_pi * inv_a.inverse_a;
  fcal::f_context ctx(trap);
  ctx.tol = std::min(1e-10, tol);

  // branch 0 has no upper pole; expand until F drops below the target,
  // using F ~ -2 sqrt(pi x) for large x as the initial guess
  if (branch == 0) {
    double guess = 1.0;
    if (target < 0.0) guess = std::max(1.0, target * target / (4.0 * pi) * 1.5);
    hi = lo + guess;
    for (int i = 0; i < 200; ++i) {
      auto g = f_at(hi, ctx);
      if (!g.ok()) return g.err();
      if (g.value() < target) break;
      hi = lo + (hi - lo) * 2.0;
      if (i == 199) return error{errc::no_root, inv_a.inverse_a};
    }
  }

  auto root = detail::bracket_root(
      [&ctx](double x) { return f_at(x, ctx); }, lo, hi, target, tol,
      /*decreasing=*/true);
  if (!root.ok()) return root.err();

  eigen_branch out;
  out.index = branch;
  out.pole_below = lo;
  out.pole_above = hi;
  out.energy = shifted_energy{-2.0 * root.value().x};
  out.residual = root.value().residual;
  return out;
}

expected<shifted_energy> solve_branch(scattering_length inv_a, int branch,
                                      const trap_geometry& trap, double tol) {
  auto r = solve_branch_full(inv_a, branch, trap, tol);
  if (!r.ok()) return r.err();
  return r.value().energy;
}

spectrum_sweep sweep_spectrum(const std::vector<double>& inv_a_grid,
                              int n_branches, const trap_geometry& trap,
                              double tol) {
  spectrum_sweep out;
  out.inv_a_grid = inv_a_grid;
  out.eta = trap.eta;
  if (n_branches <= 0 || inv_a_grid.empty()) return out;
  out.branches.assign(static_cast<std::size_t>(n_branches),
                      std::vector<double>(inv_a_grid.size(), nan_gap));

  detail::run_parallel(
      out.branches.size() * inv_a_grid.size(), [&](std::size_t t) {
        std::size_t b = t / inv_a_grid.size();
        std::size_t i = t % inv_a_grid.size();
        auto r = solve_branch(scattering_length{inv_a_grid[i]},
                              static_cast<int>(b), trap, tol);
        if (r.ok()) out.branches[b][i] = r.value().value;
      });
  return out;
}

std::vector<oscillator_state> unperturbed_states(double e_max,
                                                 const trap_geometry& trap) {
  std::vector<oscillator_state> out;
  if (!trap.valid() || !std::isfinite(e_max)) return out;
  double eta = trap.eta;
  double base = 0.5 + eta;
  if (base > e_max) return out;
  constexpr std::size_t cap = 200000;

  // m != 0 states: always interaction-blind
  for (int n = 0; base + 2.0 * eta * n <= e_max; ++n) {
    for (int am = 1; base + eta * (2.0 * n + am) <= e_max; ++am) {
      double e_nm = base + eta * (2.0 * n + am);
      for (int k = 0; e_nm + k <= e_max; ++k) {
        for (int sgn : {-1, 1}) {
          out.push_back({n, sgn * am, k, e_nm + k, 1});
          if (out.size() >= cap) return out;
        }
      }
    }
  }

  // m = 0 states, grouped into same-energy classes
  struct zk_state {
    int n, k;
    double energy;
  };
  std::vector<zk_state> zs;
  for (int n = 0; base + 2.0 * eta * n <= e_max; ++n)
    for (int k = 0; base + 2.0 * eta * n + k <= e_max; ++k)
      zs.push_back({n, k, base + 2.0 * eta * n + k});
  std::sort(zs.begin(), zs.end(), [](const zk_state& a, const zk_state& b) {
    if (a.energy != b.energy) return a.energy < b.energy;
    return a.n < b.n;
  });

  std::size_t i = 0;
  while (i < zs.size()) {
    std::size_t j = i + 1;
    while (j < zs.size() &&
           zs[j].energy - zs[i].energy <= 1e-9 * std::max(1.0, zs[i].energy))
      ++j;
    int n_class = static_cast<int>(j - i);
    bool even_dropped = false;  // one even-k member feeds the interacting state
    for (std::size_t s = i; s < j; ++s) {
      if (zs[s].k % 2 == 0 && !even_dropped) {
        even_dropped = true;
        continue;
      }
      out.push_back({zs[s].n, 0, zs[s].k, zs[s].energy, n_class});
      if (out.size() >= cap) return out;
    }
    i = j;
  }

  std::sort(out.begin(), out.end(),
            [](const oscillator_state& a, const oscillator_state& b) {
              if (a.energy != b.energy) return a.energy < b.energy;
              if (std::abs(a.m) != std::abs(b.m))
                return std::abs(a.m) < std::abs(b.m);
              if (a.m != b.m) return a.m < b.m;
              if (a.n != b.n) return a.n < b.n;
              return a.k < b.k;
            });
  return out;
}

}  // namespace tpair::spectrum
