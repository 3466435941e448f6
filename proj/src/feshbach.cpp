#include "trapped_pair/feshbach.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "parallel.hpp"
#include "trapped_pair/constants.hpp"
#include "trapped_pair/fcal.hpp"
#include "trapped_pair/spectrum.hpp"

namespace tpair::feshbach {

namespace {

constexpr double eps = std::numeric_limits<double>::epsilon();
constexpr double nan_gap = std::numeric_limits<double>::quiet_NaN();
constexpr double neg_inf = -std::numeric_limits<double>::infinity();

errc check_params(const feshbach_params& p) {
  if (!std::isfinite(p.a_bg) || p.a_bg == 0.0) return errc::invalid_argument;
  if (!std::isfinite(p.delta_b) || !std::isfinite(p.b0))
    return errc::invalid_argument;
  if (!std::isfinite(p.em_slope) || p.em_slope == 0.0)
    return errc::invalid_argument;
  if (!std::isfinite(p.e_b) || !(p.e_b > 0.0)) return errc::invalid_argument;
  return errc::ok;
}

}  // namespace

expected<feshbach_params> make_params(double a_bg, double delta_b, double b0,
                                      double em_slope, double e_b) {
  feshbach_params p{a_bg, delta_b, b0, em_slope, 0.0};
  double ref = 1.0 / (2.0 * a_bg * a_bg);
  p.e_b = e_b > 0.0 ? e_b : ref;
  errc c = check_params(p);
  if (c != errc::ok) return error{c, a_bg};
  if (e_b > 0.0 && std::abs(e_b - ref) > 1e-12 * ref)
    return error{errc::invalid_argument, e_b};
  return p;
}

expected<feshbach_params> make_params_lab(double a_bg_nm, double delta_b_mt,
                                          double b0_mt,
                                          double em_slope_khz_per_mt,
                                          double e_b_khz,
                                          const trap_geometry& trap) {
  if (!trap.valid()) return error{errc::invalid_argument, trap.eta};
  auto d = trap.osc_length();
  if (!d.ok()) return d.err();
  double a_bg = a_bg_nm * 1e-9 / d.value();
  double khz_to_quanta = 2.0 * pi * 1e3 / *trap.omega_z;  // E = h*f
  double em_slope = em_slope_khz_per_mt * khz_to_quanta;
  double e_b = e_b_khz > 0.0 ? e_b_khz * khz_to_quanta : 0.0;
  return make_params(a_bg, delta_b_mt, b0_mt, em_slope, e_b);
}

double reduced_width(const feshbach_params& p) noexcept {
  return p.delta_b * p.a_bg * p.em_slope;
}

double phase_shift(const phase_shift_params& p, double energy) noexcept {
  return p.delta_bg - std::atan(p.gamma / (energy - p.e_m - p.delta_m));
}

double divergence_field(const feshbach_params& p, double energy) noexcept {
  return p.b0 + energy / p.em_slope - p.delta_b * energy / p.e_b;
}

expected<double> divergence_energy(const feshbach_params& p, double b_field) {
  errc c = check_params(p);
  if (c != errc::ok) return error{c, p.a_bg};
  if (p.delta_b == 0.0) return error{errc::no_root, b_field};
  double slope_inv = 1.0 / p.em_slope - p.delta_b / p.e_b;
  if (slope_inv == 0.0) return error{errc::no_root, b_field};
  return (b_field - p.b0) / slope_inv;
}

expected<double> a_eff_of_e(const feshbach_params& p, double b_field,
                            double energy) {
  errc c = check_params(p);
  if (c != errc::ok) return error{c, p.a_bg};
  if (!std::isfinite(b_field) || !std::isfinite(energy))
    return error{errc::invalid_argument, b_field};
  if (p.delta_b == 0.0) return p.a_bg;
  double bstar = divergence_field(p, energy);
  double den = b_field - bstar;
  if (den == 0.0) return error{errc::pole_error, bstar};
  double val = p.a_bg * (1.0 - p.delta_b * (1.0 + energy / p.e_b) / den);
  if (!std::isfinite(val)) return error{errc::pole_error, bstar};
  return val;
}

namespace {

struct res_ctx {
  const feshbach_params& p;
  const trap_geometry& trap;
  fcal::f_context fctx;
  double b_field;
};

struct res_val {
  double r = 0.0;  // composed residual, scaled finite across a_eff zeros
  double a = 0.0;  // a_eff at the point
};

// (a_eff F + sqrt(pi)) / max(1, |a_eff|); the scaling switches smoothly to
// the reciprocal form F + sqrt(pi)/a_eff where a_eff is large, so the only
// interior sign jump left is at the a_eff pole, which callers split on
expected<res_val> residual_at(double e_shift, res_ctx& c) {
  auto f = fcal::f_eval(-0.5 * e_shift, c.fctx);
  if (!f.ok()) return f.err();
  auto a = a_eff_of_e(c.p, c.b_field, c.trap.unshift_energy(e_shift));
  if (!a.ok()) return a.err();
  double av = a.value();
  double r = (av * f.value().value + sqrt_pi) / std::max(1.0, std::abs(av));
  if (!std::isfinite(r)) return error{errc::pole_error, e_shift};
  return res_val{r, av};
}

struct seed_pt {
  double x = 0.0;
  res_val v;
};

// first evaluable point walking from `end` toward `toward`
expected<seed_pt> seed_from(double end, double toward, res_ctx& c) {
  double gap = std::abs(toward - end);
  double dir = toward > end ? 1.0 : -1.0;
  for (double d = std::max(1.0, std::abs(end)) * 1e-10; d < 0.49 * gap;
       d *= 8.0) {
    double x = end + dir * d;
    auto r = residual_at(x, c);
    if (r.ok()) return seed_pt{x, r.value()};
  }
  return error{errc::no_root, end};
}

struct root_hit {
  double e_shift = 0.0;
  double a_eff = 0.0;
  double residual = 0.0;
};

// sign-change root of the composed residual on [xl, xr]
expected<root_hit> refine(res_ctx& c, seed_pt lo, seed_pt hi, double tol) {
  if (lo.x > hi.x) std::swap(lo, hi);
  double xl = lo.x, xr = hi.x, rl = lo.v.r, rr = hi.v.r;
  root_hit best{xl, lo.v.a, std::abs(rl)};
  if (std::abs(rr) < best.residual) best = {xr, hi.v.a, std::abs(rr)};
  for (int it = 0; it < 200; ++it) {
    double xs = 0.5 * (xl + xr);
    if (it % 2 == 0 && rl != rr) {
      double cand = xl - rl * (xr - xl) / (rr - rl);
      if (cand > xl && cand < xr) xs = cand;
    }
    auto g = residual_at(xs, c);
    if (!g.ok()) return g.err();
    double rs = g.value().r;
    if (std::abs(rs) < best.residual) best = {xs, g.value().a, std::abs(rs)};
    if (std::abs(rs) <= tol) break;
    if (std::signbit(rs) == std::signbit(rl)) {
      xl = xs;
      rl = rs;
    } else {
      xr = xs;
      rr = rs;
    }
    if (xr - xl <= 8.0 * eps * std::max({std::abs(xl), std::abs(xr), 1.0}))
      break;
  }
  return best;
}

// roots below a seeded upper point, stepping down with doubling strides
expected<std::vector<root_hit>> walk_down(res_ctx& c, seed_pt top, double tol) {
  std::vector<root_hit> out;
  seed_pt cur = top;
  double step = std::max(1.0, 0.5 * std::abs(top.x));
  for (int k = 0; k < 48; ++k) {
    double x = cur.x - step;
    step *= 2.0;
    auto r = residual_at(x, c);
    if (!r.ok()) continue;
    seed_pt nxt{x, r.value()};
    if (std::signbit(nxt.v.r) != std::signbit(cur.v.r)) {
      auto h = refine(c, nxt, cur, tol);
      if (!h.ok()) return h.err();
      out.push_back(h.value());
      return out;
    }
    cur = nxt;
  }
  return out;
}

// all roots within the branch bracket, split where a_eff diverges or
// vanishes so each piece is sign-consistent
expected<std::vector<root_hit>> solve_bracket_all(const feshbach_params& p,
                                                  const trap_geometry& trap,
                                                  double b_field, int branch,
                                                  double tol) {
  std::vector<root_hit> hits;
  if (p.delta_b == 0.0) {
    auto r = spectrum::solve_branch_full(scattering_length{1.0 / p.a_bg},
                                         branch, trap, tol);
    if (!r.ok()) {
      if (r.code() == errc::no_root) return hits;
      return r.err();
    }
    hits.push_back({r.value().energy.value, p.a_bg, r.value().residual});
    return hits;
  }

  auto lattice = fcal::pole_lattice(trap, branch + 1);
  if (static_cast<int>(lattice.size()) <= branch)
    return error{errc::convergence_error, static_cast<double>(branch)};
  double e_hi = -2.0 * lattice[branch].x;
  double e_lo = branch == 0 ? neg_inf : -2.0 * lattice[branch - 1].x;

  res_ctx ctx{p, trap, fcal::f_context(trap), b_field};
  ctx.fctx.tol = std::min(1e-10, tol);

  // interior split points: a_eff pole (sign jump) and a_eff zero (roots can
  // sit on both sides of it)
  double edges[4] = {e_lo, 0.0, 0.0, 0.0};
  int n_edges = 1;
  double splits[2];
  int n_splits = 0;
  auto estar = divergence_energy(p, b_field);
  if (estar.ok()) splits[n_splits++] = trap.shift_energy(estar.value());
  splits[n_splits++] =
      trap.shift_energy(p.em_slope * (b_field - p.b0 - p.delta_b));
  std::sort(splits, splits + n_splits);
  for (int i = 0; i < n_splits; ++i) {
    double s = splits[i];
    double margin = 1e-10 * std::max(1.0, std::abs(s));
    if (s > e_lo + margin && s < e_hi - margin &&
        (n_edges == 1 || s > edges[n_edges - 1] + margin))
      edges[n_edges++] = s;
  }
  edges[n_edges++] = e_hi;

  for (int i = 0; i + 1 < n_edges; ++i) {
    double lo = edges[i], hi = edges[i + 1];
    double pseudo_lo =
        lo == neg_inf ? hi - 4.0 * std::max(1.0, std::abs(hi)) : lo;
    auto sh = seed_from(hi, pseudo_lo, ctx);
    if (!sh.ok()) continue;
    if (lo == neg_inf) {
      auto deep = walk_down(ctx, sh.value(), tol);
      if (!deep.ok()) return deep.err();
      for (const auto& h : deep.value()) hits.push_back(h);
      continue;
    }
    auto sl = seed_from(lo, hi, ctx);
    if (!sl.ok()) continue;
    if (std::signbit(sl.value().v.r) == std::signbit(sh.value().v.r)) continue;
    auto h = refine(ctx, sl.value(), sh.value(), tol);
    if (!h.ok()) return h.err();
    hits.push_back(h.value());
  }

  std::sort(hits.begin(), hits.end(),
            [](const root_hit& a, const root_hit& b) {
              return a.e_shift < b.e_shift;
            });
  hits.erase(std::unique(hits.begin(), hits.end(),
                         [](const root_hit& a, const root_hit& b) {
                           return std::abs(a.e_shift - b.e_shift) <=
                                  1e-9 * std::max(1.0, std::abs(a.e_shift));
                         }),
             hits.end());
  return hits;
}

}  // namespace

expected<shifted_energy> solve_feshbach_spectrum(const feshbach_params& p,
                                                 const trap_geometry& trap,
                                                 double b_field, int branch,
                                                 double tol) {
  if (!trap.valid()) return error{errc::invalid_argument, trap.eta};
  if (branch < 0)
    return error{errc::invalid_argument, static_cast<double>(branch)};
  if (!(tol > 0.0)) return error{errc::invalid_argument, tol};
  errc c = check_params(p);
  if (c != errc::ok) return error{c, p.a_bg};
  if (!std::isfinite(b_field)) return error{errc::invalid_argument, b_field};

  if (p.delta_b == 0.0)
    return spectrum::solve_branch(scattering_length{1.0 / p.a_bg}, branch,
                                  trap, tol);

  auto hits = solve_bracket_all(p, trap, b_field, branch, tol);
  if (!hits.ok()) return hits.err();
  if (hits.value().empty()) return error{errc::no_root, b_field};
  return shifted_energy{hits.value().front().e_shift};
}

feshbach_sweep sweep_feshbach(const feshbach_params& p,
                              const trap_geometry& trap,
                              const std::vector<double>& b_grid,
                              int n_branches, double tol) {
  feshbach_sweep out;
  out.b_grid = b_grid;
  out.eta = trap.eta;
  if (!trap.valid() || check_params(p) != errc::ok || n_branches <= 0 ||
      b_grid.empty() || !(tol > 0.0))
    return out;
  out.branches.assign(static_cast<std::size_t>(n_branches),
                      std::vector<double>(b_grid.size(), nan_gap));
  out.a_eff = out.branches;
  out.residuals = out.branches;
  out.locus.assign(b_grid.size(), nan_gap);

  int n_brackets = n_branches + 3;
  detail::run_parallel(b_grid.size(), [&](std::size_t i) {
    double b_field = b_grid[i];
    std::vector<root_hit> all;
    for (int b = 0; b < n_brackets; ++b) {
      auto h = solve_bracket_all(p, trap, b_field, b, tol);
      if (!h.ok()) continue;
      for (const auto& r : h.value()) all.push_back(r);
    }
    std::sort(all.begin(), all.end(), [](const root_hit& a, const root_hit& b) {
      return a.e_shift < b.e_shift;
    });
    std::size_t n =
        std::min<std::size_t>(all.size(), static_cast<std::size_t>(n_branches));
    for (std::size_t j = 0; j < n; ++j) {
      out.branches[j][i] = all[j].e_shift;
      out.a_eff[j][i] = all[j].a_eff;
      out.residuals[j][i] = all[j].residual;
    }
    auto estar = divergence_energy(p, b_field);
    if (estar.ok()) out.locus[i] = trap.shift_energy(estar.value());
  });
  return out;
}

}  // namespace tpair::feshbach
