#pragma once

#include <vector>

#include "trapped_pair/core.hpp"
#include "trapped_pair/errors.hpp"

// Energy-dependent scattering length near a magnetic Feshbach resonance and
// the self-consistent pair spectrum it generates in the trap.
namespace tpair::feshbach {

// Resonance description in trap units: lengths in d, energies in
// hbar*omega_z, magnetic field in one fixed unit used consistently.
// e_b is the background binding scale 1/(2 a_bg^2); the reduced width is
// recoverable as gamma = delta_b * a_bg * em_slope.
struct feshbach_params {
  double a_bg = 0.0;      // background scattering length / d
  double delta_b = 0.0;   // resonance width [field]
  double b0 = 0.0;        // resonance position [field]
  double em_slope = 0.0;  // bare-state energy slope dE_m/dB [quanta/field]
  double e_b = 0.0;       // background binding energy [quanta]
};

// Validated construction. e_b <= 0 derives the consistent value
// 1/(2 a_bg^2); an explicit e_b must agree with it to 1e-12 relative.
expected<feshbach_params> make_params(double a_bg, double delta_b, double b0,
                                      double em_slope, double e_b = 0.0);

// Laboratory-unit boundary: lengths in nm, fields in mT, energies as
// frequency equivalents in kHz (E = h*f). Converted once through the trap's
// physical scales; the resulting params use mT as the field unit.
expected<feshbach_params> make_params_lab(double a_bg_nm, double delta_b_mt,
                                          double b0_mt,
                                          double em_slope_khz_per_mt,
                                          double e_b_khz,
                                          const trap_geometry& trap);

// gamma = delta_b * a_bg * em_slope
double reduced_width(const feshbach_params& p) noexcept;

// Open-channel phase shift near an isolated resonance. gamma enters the
// arctan as given; the physical width Gamma = 2*gamma_red*k corresponds to
// gamma = gamma_red * k at the evaluation energy.
struct phase_shift_params {
  double delta_bg = 0.0;  // background phase shift [rad]
  double e_m = 0.0;       // bare resonance energy
  double delta_m = 0.0;   // resonance shift
  double gamma = 0.0;     // half width at the evaluation energy
};

// delta_bg - atan(gamma / (E - e_m - delta_m))
double phase_shift(const phase_shift_params& p, double energy) noexcept;

// a_eff(E) = a_bg * [1 - delta_b (1 + E/e_b) / (B - B*(E))], analytic in E,
// so negative energies evaluate directly. energy is the total relative
// energy in trap quanta. A vanishing denominator reports pole_error with the
// divergence field in error.where.
expected<double> a_eff_of_e(const feshbach_params& p, double b_field,
                            double energy);

// divergence field B*(E) = b0 + E/em_slope - delta_b*E/e_b, linear in E
double divergence_field(const feshbach_params& p, double energy) noexcept;

// total energy at which a_eff diverges for a given field; no_root when the
// locus slope vanishes
expected<double> divergence_energy(const feshbach_params& p, double b_field);

// Root of a_eff(E)*F((E0-E)/2) + sqrt(pi) = 0 on the requested branch
// bracket, the reciprocal form taking over near a_eff poles. The bracket is
// subdivided where B*(E) crosses it; if the resonance splits the bracket
// into two populated arms, the lower root is returned. delta_b = 0 routes
// through the constant-a solver unchanged.
expected<shifted_energy> solve_feshbach_spectrum(const feshbach_params& p,
                                                 const trap_geometry& trap,
                                                 double b_field, int branch,
                                                 double tol = 1e-10);

// Spectrum versus field. Rows are energy-ordered at each field point so
// curves stay continuous through anticrossings; failed points are NaN gaps.
struct feshbach_sweep {
  std::vector<double> b_grid;
  std::vector<std::vector<double>> branches;   // [branch][point], E_shift
  std::vector<std::vector<double>> a_eff;      // value at the solution
  std::vector<std::vector<double>> residuals;  // composed-equation residual
  std::vector<double> locus;  // E_shift where a_eff diverges, NaN if none
  double eta = 1.0;
};

feshbach_sweep sweep_feshbach(const feshbach_params& p,
                              const trap_geometry& trap,
                              const std::vector<double>& b_grid,
                              int n_branches, double tol = 1e-10);

}  // namespace tpair::feshbach
