#ifndef TPAIR_CORE_HPP
#define TPAIR_CORE_HPP

#include <cmath>
#include <optional>

#include "trapped_pair/constants.hpp"
#include "trapped_pair/errors.hpp"

namespace tpair {

// Axially symmetric harmonic trap for the relative motion of the pair.
// eta = omega_perp / omega_z. Internally every energy is measured in
// hbar*omega_z and every length in d = sqrt(hbar / (mu * omega_z)).
// The zero-point offset is E0 = 1/2 + eta; shifted energies are
// E_shift = E - E0, so the noninteracting m=0 even levels sit at
// E_shift = 2*(n*eta + j), n, j = 0, 1, 2, ...
struct trap_geometry {
  double eta = 1.0;

  // optional physical scales (SI); only needed for lab-unit conversion
  std::optional<double> omega_z;        // rad/s
  std::optional<double> reduced_mass;   // kg

  bool has_physical_scale() const { return omega_z && reduced_mass; }

  // oscillator length d [m]; requires physical scales
  expected<double> osc_length() const {
    if (!has_physical_scale()) return errc::unit_error;
    return std::sqrt(hbar_si / (*reduced_mass * *omega_z));
  }
  // transverse oscillator length d_perp = d / sqrt(eta) [m]
  expected<double> osc_length_perp() const {
    auto d = osc_length();
    if (!d.ok()) return d;
    return d.value() / std::sqrt(eta);
  }
  // energy of one trap quantum hbar*omega_z [J]
  expected<double> energy_quantum() const {
    if (!omega_z) return errc::unit_error;
    return hbar_si * *omega_z;
  }

  double zero_point() const { return 0.5 + eta; }

  double shift_energy(double e_total) const { return e_total - zero_point(); }
  double unshift_energy(double e_shift) const { return e_shift + zero_point(); }

  // dimensionless transverse length d_perp/d
  double d_perp_over_d() const { return 1.0 / std::sqrt(eta); }

  bool valid() const { return std::isfinite(eta) && eta > 0.0; }
};

// detect eta = n or eta = 1/n within tolerance; returns n (>= 1) or 0
int commensurate_integer(double value, double tol = 1e-9);

// Shifted energy E - E0 in units of hbar*omega_z; bound states sit below 0.
struct shifted_energy {
  double value = 0.0;

  double total(const trap_geometry& g) const { return g.unshift_energy(value); }
  bool bound() const { return value < 0.0; }
};

// total energy in joules; requires physical trap scales
expected<double> to_physical(shifted_energy e, const trap_geometry& g);

// Scattering length stored as 1/a (units 1/d) so unitarity is the regular
// interior value 0.
struct scattering_length {
  double inverse_a = 0.0;
};

enum class f_strategy {
  integral,
  series,
  closed_cigar,
  closed_pancake,
  quasi_1d,
  quasi_2d,
  recurrence
};

const char* f_strategy_name(f_strategy s) noexcept;

struct spectral_result {
  double value = 0.0;
  f_strategy strategy = f_strategy::series;
  double abs_err = 0.0;
};

}  // namespace tpair

#endif
