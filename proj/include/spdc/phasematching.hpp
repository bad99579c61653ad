#pragma once

#include <optional>
#include <string>
#include <vector>

#include "spdc/dispersion.hpp"
#include "spdc/roots.hpp"

namespace spdc {

/// Gaussian pump pulse. tau is the intensity FWHM duration.
struct PumpPulse {
  double lambda0_um = 0.3975;
  double tau_fs = 50.0;

  double omega0() const;
  void validate() const;
  bool operator==(const PumpPulse&) const = default;
};

namespace phasematching {

enum class PhaseMatchingType { TypeI, TypeII };

std::string to_string(PhaseMatchingType type);
PhaseMatchingType parse_pm_type(const std::string& text);

struct Setup {
  dispersion::CrystalModel crystal;
  double length_um = 1.0e4;
  double cut_angle_rad = 0.0;
  PhaseMatchingType type = PhaseMatchingType::TypeII;
  PumpPulse pump;

  /// L > 0, angle in (0, pi/2), lambda0 and 2*lambda0 inside the crystal range.
  void validate() const;
};

enum class MismatchKind { TypeI, Delta12, Delta21 };

std::string to_string(MismatchKind kind);

/// k_p(w1+w2, phi) - k_o(w1) - k_o(w2), 1/um.
double mismatch_type1(const Setup& setup, double omega1, double omega2);
/// k_p(w1+w2, phi) - k_o(w1) - k_e(w2, phi): photon 1 ordinary, photon 2 extraordinary.
double mismatch_12(const Setup& setup, double omega1, double omega2);
/// Transposed mismatch: photon 2 ordinary, photon 1 extraordinary.
double mismatch_21(const Setup& setup, double omega1, double omega2);
double mismatch(const Setup& setup, MismatchKind kind, double omega1, double omega2);

/// Degenerate-point mismatches as functions of the cut angle (setup.cut_angle_rad is ignored).
double central_mismatch_type1(const Setup& setup, double angle_rad);
double central_mismatch_type2(const Setup& setup, double angle_rad);

struct AngleSolverOptions {
  double lo_rad;
  double hi_rad;
  int scan_points = 2000;
  double tolerance_rad = 1e-12;
};
AngleSolverOptions default_angle_options();

struct AngleSolution {
  double angle_rad;
  double residual;  // 1/um
  std::vector<std::string> warnings;
};

/// Cut angle at which the central mismatch of setup.type vanishes.
/// Throws NoPhaseMatchingError when the scan window holds no sign change.
AngleSolution solve_degenerate_angle(const Setup& setup,
                                     const AngleSolverOptions& options = default_angle_options());

struct WavelengthRoot {
  double lambda1_um;
  double residual;
  std::vector<roots::Interval> sign_changes;
  std::vector<std::string> warnings;
};

inline constexpr double kWavelengthTolerance = 1e-9;  // um

/// lambda_1 zero of the selected mismatch at fixed lambda_2 inside the bracket.
WavelengthRoot solve_zero_mismatch_wavelength(const Setup& setup, MismatchKind kind,
                                              double lambda2_um, roots::Interval bracket_um,
                                              int scan_points = 2000);

/// Builds a setup, solving for the matching angle when none is given.
Setup make_setup(dispersion::CrystalModel crystal, PumpPulse pump, double length_um,
                 PhaseMatchingType type, std::optional<double> cut_angle_rad = std::nullopt);

}  // namespace phasematching
}  // namespace spdc
