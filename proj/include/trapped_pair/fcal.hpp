#pragma once

#include <optional>
#include <vector>

#include "trapped_pair/core.hpp"
#include "trapped_pair/errors.hpp"

// Evaluation of the spectral function F(x) whose roots against -sqrt(pi)/a
// give the pair spectrum. x = -(E - E0)/2 in units of hbar*omega_z.
namespace tpair::fcal {

struct f_context {
  trap_geometry trap;
  std::optional<f_strategy> strategy_override;
  double tol = 1e-10;

  explicit f_context(trap_geometry t) : trap(t) {}
  f_context(trap_geometry t, f_strategy s) : trap(t), strategy_override(s) {}
};

// semi-infinite integral representation; requires x > 0
expected<spectral_result> f_integral(double x, const f_context& ctx);

// gamma-ratio series with zeta-accelerated tail; any x off the pole lattice
expected<spectral_result> f_series(double x, const f_context& ctx);

// lift x upward by `steps` recurrence applications before evaluating
expected<spectral_result> f_recurrence(double x, int steps, const f_context& ctx);

// closed forms for eta = n (cigar) and eta = 1/n (pancake)
expected<spectral_result> f_closed_cigar(double x, int n, double tol = 1e-10);
expected<spectral_result> f_closed_pancake(double x, int n);

enum class q1d_order { bare, plus_recurrence };

// elongated-trap (eta >> 1) approximations
expected<spectral_result> f_quasi1d(double x, const f_context& ctx,
                                    q1d_order order = q1d_order::plus_recurrence);

// pancake-trap auxiliary function Phi and the eta << 1 approximation
expected<double> phi_eval(double x);
expected<spectral_result> f_quasi2d(double x, const f_context& ctx);

// strategy dispatcher; never selects a quasi-limit unless overridden
expected<spectral_result> f_eval(double x, const f_context& ctx);

// pole lattice x = -(n*eta + j), n,j >= 0, merged within 1e-9
struct f_pole {
  double x = 0.0;
  int multiplicity = 1;
  double residue = 0.0;  // F(y) ~ residue/(y - x) nearby
};

// descending poles (0 = largest), at least `count` of them
std::vector<f_pole> pole_lattice(const trap_geometry& trap, int count);

// distance from x to the nearest lattice pole
double nearest_pole_distance(double x, const trap_geometry& trap);

}  // namespace tpair::fcal
