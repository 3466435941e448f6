#ifndef TPAIR_CONSTANTS_HPP
#define TPAIR_CONSTANTS_HPP

namespace tpair {

inline constexpr double pi = 3.14159265358979323846;
inline constexpr double sqrt_pi = 1.77245385090551602730;
inline constexpr double sqrt_2 = 1.41421356237309504880;
inline constexpr double euler_gamma = 0.57721566490153286061;
inline constexpr double ln_2 = 0.69314718055994530942;

// zeta(1/2), used by the quasi-1D effective scattering length
inline constexpr double zeta_half = -1.46035450880958681289;

// CODATA 2018
inline constexpr double hbar_si = 1.054571817e-34;       // J s
inline constexpr double amu_si = 1.66053906660e-27;      // kg
inline constexpr double bohr_radius_si = 5.29177210903e-11;  // m

inline constexpr const char* version_string = "1.0.0";

}  // namespace tpair

#endif
