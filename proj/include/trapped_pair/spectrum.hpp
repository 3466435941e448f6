#pragma once

#include <vector>

#include "trapped_pair/core.hpp"
#include "trapped_pair/errors.hpp"

// Eigenvalue solver for the pair spectrum: roots of F(x) = -sqrt(pi)/a with
// x = -E_shift/2, one root per bracket between consecutive poles of F.
namespace tpair::spectrum {

// Branch b >= 1 lives between poles b and b-1 of the descending lattice;
// branch 0 extends from the topmost pole (x = 0) to x -> +inf and carries
// the bound state for a > 0.
struct eigen_branch {
  int index = 0;
  double pole_below = 0.0;  // lower bracket end in x
  double pole_above = 0.0;  // upper bracket end in x (+inf on branch 0)
  shifted_energy energy;
  double residual = 0.0;  // |F(x) - target| at the returned root
};

expected<eigen_branch> solve_branch_full(scattering_length inv_a, int branch,
                                         const trap_geometry& trap,
                                         double tol = 1e-10);

expected<shifted_energy> solve_branch(scattering_length inv_a, int branch,
                                      const trap_geometry& trap,
                                      double tol = 1e-10);

// Energies over a 1/a grid, one row per branch; failed points are NaN gaps.
struct spectrum_sweep {
  std::vector<double> inv_a_grid;
  std::vector<std::vector<double>> branches;  // [branch][grid point]
  double eta = 1.0;
};

spectrum_sweep sweep_spectrum(const std::vector<double>& inv_a_grid,
                              int n_branches, const trap_geometry& trap,
                              double tol = 1e-10);

// Oscillator state of the relative motion, E = eta(2n+|m|+1) + k + 1/2.
struct oscillator_state {
  int n = 0;  // radial
  int m = 0;  // angular momentum projection
  int k = 0;  // axial
  double energy = 0.0;
  // size of the same-energy m=0 class this state belongs to (1 for m != 0)
  int multiplicity = 1;
};

// All interaction-blind states with energy <= e_max: every m != 0 state,
// every m = 0 odd-k state, and all but one member of each degenerate
// m = 0 even-k multiplet (the contact interaction consumes exactly one).
std::vector<oscillator_state> unperturbed_states(double e_max,
                                                 const trap_geometry& trap);

}  // namespace tpair::spectrum
