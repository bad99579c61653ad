#pragma once

#include <numbers>

namespace spdc {

// Internal units: micrometers, femtoseconds, rad/fs, 1/um.
struct PhysicalConstants {
  static constexpr double c = 0.299792458;  // um/fs
};

inline constexpr double kSpeedOfLight = PhysicalConstants::c;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wavelength_to_frequency(double lambda_um);
double frequency_to_wavelength(double omega_radfs);

inline constexpr double deg_to_rad(double deg) { return deg * std::numbers::pi / 180.0; }
inline constexpr double rad_to_deg(double rad) { return rad * 180.0 / std::numbers::pi; }

}  // namespace spdc
