// units.hpp — unit conventions shared across the library.
//
// User-facing energies/frequencies are wavenumbers (cm^-1) and times are
// femtoseconds. Internally every oscillatory quantity is converted to angular
// frequency in rad/fs at a single point, via the factor 2*pi*c.

#pragma once

#include <numbers>

namespace xqpt::units {

// Speed of light in cm/fs
inline constexpr double c_cm_per_fs = 2.99792458e-5;

// Angular frequency (rad/fs) per wavenumber (cm^-1): 2*pi*c = 1.88365e-4
inline constexpr double rad_fs_per_cm = 2.0 * std::numbers::pi * c_cm_per_fs;

// Boltzmann constant in cm^-1 per Kelvin
inline constexpr double k_boltzmann_cm_per_k = 0.69504;

constexpr double cm_to_rad_fs(double wavenumber_cm) noexcept {
    return wavenumber_cm * rad_fs_per_cm;
}

constexpr double rad_fs_to_cm(double omega_rad_fs) noexcept {
    return omega_rad_fs / rad_fs_per_cm;
}

} // namespace xqpt::units
