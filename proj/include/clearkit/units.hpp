#pragma once

#include <numbers>

// Internal units: angular frequency in rad/us, time in us, photon number
// dimensionless. Ordinary frequencies appear only at I/O boundaries.
namespace clearkit::units {

inline constexpr double two_pi = 2.0 * std::numbers::pi;

/// MHz -> rad/us.
constexpr double convert_frequency(double mhz) { return two_pi * mhz; }
/// rad/us -> MHz.
constexpr double to_mhz(double rad_per_us) { return rad_per_us / two_pi; }

constexpr double ghz_to_rad_per_us(double ghz) { return convert_frequency(ghz * 1e3); }
constexpr double khz_to_rad_per_us(double khz) { return convert_frequency(khz * 1e-3); }
constexpr double to_khz(double rad_per_us) { return to_mhz(rad_per_us) * 1e3; }

constexpr double ns_to_us(double ns) { return ns * 1e-3; }

}  // namespace clearkit::units
