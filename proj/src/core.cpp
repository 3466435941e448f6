#include "trapped_pair/core.hpp"

#include <cmath>

#include "trapped_pair/errors.hpp"

namespace tpair {

const char* errc_name(errc c) noexcept {
  switch (c) {
    case errc::ok: return "ok";
    case errc::domain_error: return "domain_error";
    case errc::pole_error: return "pole_error";
    case errc::no_root: return "no_root";
    case errc::convergence_error: return "convergence_error";
    case errc::invalid_argument: return "invalid_argument";
    case errc::unit_error: return "unit_error";
  }
  return "unknown";
}

int commensurate_integer(double value, double tol) {
  if (!(value > 0.0)) return 0;
  double r = std::round(value);
  if (r >= 1.0 && std::abs(value - r) <= tol * r) return static_cast<int>(r);
  double inv = 1.0 / value;
  double ri = std::round(inv);
  if (ri >= 2.0 && std::abs(inv - ri) <= tol * ri) return static_cast<int>(ri);
  return 0;
}

expected<double> to_physical(shifted_energy e, const trap_geometry& g) {
  if (!g.has_physical_scale()) return error{errc::unit_error};
  auto eq = g.energy_quantum();
  if (!eq.ok()) return eq;
  return g.unshift_energy(e.value) * eq.value();
}

const char* f_strategy_name(f_strategy s) noexcept {
  switch (s) {
    case f_strategy::integral: return "integral";
    case f_strategy::series: return "series";
    case f_strategy::closed_cigar: return "closed_cigar";
    case f_strategy::closed_pancake: return "closed_pancake";
    case f_strategy::quasi_1d: return "quasi_1d";
    case f_strategy::quasi_2d: return "quasi_2d";
    case f_strategy::recurrence: return "recurrence";
  }
  return "unknown";
}

}  // namespace tpair
