#pragma once

#include <optional>
#include <vector>

#include "trapped_pair/core.hpp"
#include "trapped_pair/errors.hpp"

// Effective 1D (elongated trap) and 2D (pancake trap) models with
// renormalized static and energy-dependent scattering lengths.
namespace tpair::lowdim {

struct a1d {
  double value = 0.0;  // units of d
  bool energy_dependent = false;
  std::optional<shifted_energy> source_energy;
};

struct a2d {
  double value = 0.0;  // units of d, always > 0
  bool energy_dependent = false;
  std::optional<shifted_energy> source_energy;
};

// a1D = -1/(2 eta a) - zeta(1/2)/(2 sqrt(eta))
a1d a1d_static(double a_inv, const trap_geometry& trap);

// zeta(1/2) -> zetaH(1/2, 1 - E_shift/(2 eta)); E_shift >= 2 eta is outside
// the domain (the zetaH argument hits its singularity lattice)
expected<a1d> a1d_energy_dependent(double a_inv, shifted_energy energy,
                                   const trap_geometry& trap);

// roots of 2 a1D = Gamma(-E/2)/Gamma(-E/2 + 1/2): branch 0 is the bound
// state (a1D > 0 only), branch j >= 1 lies in E_shift of (2(j-1), 2j)
expected<shifted_energy> solve_1d_branch(const a1d& a, int branch,
                                         double tol = 1e-10);
expected<std::vector<shifted_energy>> solve_1d(const a1d& a, int n_roots,
                                               double tol = 1e-10);

// transverse-confinement bound state: -d_perp/a = zetaH(1/2, -E_shift/(2 eta));
// depends on the trap only through eta*omega_z = omega_perp
expected<shifted_energy> bound_state_q1d(double a_inv,
                                         const trap_geometry& trap,
                                         double tol = 1e-10);

// a2D = (1/sqrt 2) exp(Phi(0)/2 - sqrt(pi)/(2a)); the energy-dependent form
// replaces Phi(0) by Phi(-E_shift/2), defined for E_shift < 2
a2d a2d_static(double a_inv);
expected<a2d> a2d_energy_dependent(double a_inv, shifted_energy energy,
                                   const trap_geometry& trap);

// roots of -ln(2 a2D^2 eta) = psi(-E_shift/(2 eta)); branch j >= 1 lies in
// E_shift of (2 eta (j-1), 2 eta j)
expected<shifted_energy> solve_2d_branch(const a2d& a,
                                         const trap_geometry& trap, int branch,
                                         double tol = 1e-10);
expected<std::vector<shifted_energy>> solve_2d(const a2d& a,
                                               const trap_geometry& trap,
                                               int n_roots, double tol = 1e-10);

// 2D coupling constant in units of hbar^2/mu, k in units of 1/d; an often
// quoted alternative convention replaces Phi(0) by ln(2 pi) ~ 1.838
expected<double> g2d_coupling(double a_inv, double k);

// excited pancake levels: sqrt(pi)/a = ln(eta) + Phi(x) + psi(x/eta) with
// x = -E_shift/2; one root per branch j >= 1 while the bracket (-j eta,
// -(j-1) eta) stays above Phi's domain edge x = -1. May return fewer than
// n_roots; empty range is a domain error.
expected<std::vector<shifted_energy>> solve_quasi2d_excited(
    double a_inv, const trap_geometry& trap, int n_roots, double tol = 1e-10);

// self-consistent energy-dependent solves: damped fixed point on E (under-
// relaxation 0.5), falling back to bracketed root finding on the composed
// residual when the iteration stalls or leaves its bracket
expected<shifted_energy> solve_q1d_energy_dependent(double a_inv, int branch,
                                                    const trap_geometry& trap,
                                                    double tol = 1e-10);
expected<shifted_energy> solve_q2d_energy_dependent(double a_inv, int branch,
                                                    const trap_geometry& trap,
                                                    double tol = 1e-10);

// shallow pancake dimer: E0 - E = 2 exp(-Phi(0)) exp(sqrt(pi)/a), valid
// while the binding stays well below one axial quantum
double shallow_2d_binding(double a_inv);

}  // namespace tpair::lowdim
