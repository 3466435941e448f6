#ifndef TPAIR_WAVEFUN_HPP
#define TPAIR_WAVEFUN_HPP

#include "trapped_pair/core.hpp"
#include "trapped_pair/errors.hpp"

namespace tpair::wavefun {

enum class psi_rep {
  axial_series,
  radial_series,
  integral,
  q1d_bound,
  q2d_bound,
  q1d_excited,
  q2d_excited,
};

const char* psi_rep_name(psi_rep rep) noexcept;

// non-normalized eigenfunction value at cylindrical (rho, z), lengths in d
struct wavefun_eval {
  double rho = 0.0;
  double z = 0.0;
  double value = 0.0;
  psi_rep representation = psi_rep::axial_series;
};

// N^{-2} with the number of explicit terms and a tail-error estimate
struct normalization {
  double n_inv_sq = 0.0;
  int n_terms = 0;
  double tail_bound = 0.0;
};

// expansion over transverse oscillator channels; valid for any energy off
// the pole lattice and usable at rho = 0 (slow exactly on the z = 0 line)
expected<wavefun_eval> psi_axial_series(shifted_energy energy, double rho,
                                        double z, const trap_geometry& trap,
                                        double tol = 1e-10);

// expansion over axial oscillator channels; diverges logarithmically at
// rho = 0
expected<wavefun_eval> psi_radial_series(shifted_energy energy, double rho,
                                         double z, const trap_geometry& trap,
                                         double tol = 1e-10);

// Green-function quadrature, bound states only (E_shift < 0)
expected<wavefun_eval> psi_bound_integral(shifted_energy energy, double rho,
                                          double z, const trap_geometry& trap,
                                          double tol = 1e-10);

// picks the series suited to the point: axial near the axis, radial
// elsewhere
expected<wavefun_eval> psi_eval(shifted_energy energy, double rho, double z,
                                const trap_geometry& trap, double tol = 1e-10);

// psi_eval scaled by the normalization factor N = n_inv_sq^{-1/2}
expected<wavefun_eval> psi_normalized(shifted_energy energy, double rho,
                                      double z, const trap_geometry& trap,
                                      double tol = 1e-10);

// closed approximations for elongated (q1d) and flat (q2d) traps; the
// regime is not enforced, the representation tag records what was used
expected<wavefun_eval> psi_q1d_bound(shifted_energy energy, double rho,
                                     double z, const trap_geometry& trap,
                                     double tol = 1e-10);
expected<wavefun_eval> psi_q2d_bound(shifted_energy energy, double rho,
                                     double z, const trap_geometry& trap,
                                     double tol = 1e-10);
expected<wavefun_eval> psi_q1d_excited(shifted_energy energy, double rho,
                                       double z, const trap_geometry& trap);
expected<wavefun_eval> psi_q2d_excited(shifted_energy energy, double rho,
                                       double z, const trap_geometry& trap);

// N^{-2} via the transverse-channel sum and via the axial-channel sum
expected<normalization> norm_axial(shifted_energy energy,
                                   const trap_geometry& trap,
                                   double tol = 1e-10);
expected<normalization> norm_radial(shifted_energy energy,
                                    const trap_geometry& trap,
                                    double tol = 1e-10);

// single term of each normalization sum, prefactor included (term 0 over
// n_inv_sq gives the dominance fraction of the leading channel)
expected<double> norm_axial_term(shifted_energy energy,
                                 const trap_geometry& trap, int m);
expected<double> norm_radial_term(shifted_energy energy,
                                  const trap_geometry& trap, int k);

}  // namespace tpair::wavefun

#endif
