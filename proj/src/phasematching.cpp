#include "spdc/phasematching.hpp"

#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "spdc/constants.hpp"
#include "spdc/error.hpp"

namespace spdc {

double PumpPulse::omega0() const { return wavelength_to_frequency(lambda0_um); }

void PumpPulse::validate() const {
  if (!(lambda0_um > 0.0)) throw UsageError(fmt::format("pump wavelength must be > 0, got {}", lambda0_um));
  if (!(tau_fs > 0.0)) throw UsageError(fmt::format("pulse duration must be > 0, got {}", tau_fs));
}

namespace phasematching {

using dispersion::index_extraordinary_at_angle;
using dispersion::index_ordinary;

std::string to_string(PhaseMatchingType type) {
  return type == PhaseMatchingType::TypeI ? "I" : "II";
}

PhaseMatchingType parse_pm_type(const std::string& text) {
  if (text == "I" || text == "1" || text == "type1" || text == "TypeI") return PhaseMatchingType::TypeI;
  if (text == "II" || text == "2" || text == "type2" || text == "TypeII") return PhaseMatchingType::TypeII;
  throw UsageError("unknown phase-matching type '" + text + "' (expected I or II)");
}

std::string to_string(MismatchKind kind) {
  switch (kind) {
    case MismatchKind::TypeI: return "type1";
    case MismatchKind::Delta12: return "delta12";
    case MismatchKind::Delta21: return "delta21";
  }
  return "?";
}

void Setup::validate() const {
  pump.validate();
  if (!(length_um > 0.0)) throw UsageError(fmt::format("crystal length must be > 0, got {}", length_um));
  if (!(cut_angle_rad > 0.0 && cut_angle_rad < std::numbers::pi / 2)) {
    throw UsageError(fmt::format("cut angle {} deg outside (0, 90)", rad_to_deg(cut_angle_rad)));
  }
  const auto range = crystal.valid_range();
  for (double l : {pump.lambda0_um, 2.0 * pump.lambda0_um}) {
    if (!range.contains(l)) throw RangeError(l, range.lo_um, range.hi_um);
  }
}

namespace {

double k_ordinary(const Setup& s, double omega) {
  return index_ordinary(s.crystal, frequency_to_wavelength(omega)) * omega / kSpeedOfLight;
}

double k_extraordinary(const Setup& s, double omega, double angle) {
  return index_extraordinary_at_angle(s.crystal, frequency_to_wavelength(omega), angle) * omega /
         kSpeedOfLight;
}

void require_type(const Setup& s, PhaseMatchingType type, const char* what) {
  if (s.type != type) {
    throw UsageError(fmt::format("{} requires a type-{} setup, got type-{}", what, to_string(type),
                                 to_string(s.type)));
  }
}

}  // namespace

double mismatch_type1(const Setup& setup, double omega1, double omega2) {
  require_type(setup, PhaseMatchingType::TypeI, "type-I mismatch");
  const double pump = k_extraordinary(setup, omega1 + omega2, setup.cut_angle_rad);
  // Sum the photon terms in a fixed order so the result is exactly symmetric.
  const double ka = k_ordinary(setup, std::min(omega1, omega2));
  const double kb = k_ordinary(setup, std::max(omega1, omega2));
  return pump - ka - kb;
}

double mismatch_12(const Setup& setup, double omega1, double omega2) {
  require_type(setup, PhaseMatchingType::TypeII, "mismatch Delta12");
  return k_extraordinary(setup, omega1 + omega2, setup.cut_angle_rad) - k_ordinary(setup, omega1) -
         k_extraordinary(setup, omega2, setup.cut_angle_rad);
}

double mismatch_21(const Setup& setup, double omega1, double omega2) {
  return mismatch_12(setup, omega2, omega1);
}

double mismatch(const Setup& setup, MismatchKind kind, double omega1, double omega2) {
  switch (kind) {
    case MismatchKind::TypeI: return mismatch_type1(setup, omega1, omega2);
    case MismatchKind::Delta12: return mismatch_12(setup, omega1, omega2);
    case MismatchKind::Delta21: return mismatch_21(setup, omega1, omega2);
  }
  throw UsageError("unknown mismatch kind");
}

double central_mismatch_type1(const Setup& setup, double angle_rad) {
  Setup s = setup;
  s.cut_angle_rad = angle_rad;
  s.type = PhaseMatchingType::TypeI;
  const double half = setup.pump.omega0() / 2.0;
  return mismatch_type1(s, half, half);
}

double central_mismatch_type2(const Setup& setup, double angle_rad) {
  Setup s = setup;
  s.cut_angle_rad = angle_rad;
  s.type = PhaseMatchingType::TypeII;
  const double half = setup.pump.omega0() / 2.0;
  return mismatch_12(s, half, half);
}

AngleSolverOptions default_angle_options() {
  return {deg_to_rad(1.0), deg_to_rad(89.0), 2000, 1e-12};
}

AngleSolution solve_degenerate_angle(const Setup& setup, const AngleSolverOptions& options) {
  const auto central = [&](double phi) {
    return setup.type == PhaseMatchingType::TypeI ? central_mismatch_type1(setup, phi)
                                                  : central_mismatch_type2(setup, phi);
  };
  try {
    auto r = roots::find_first_root(central, options.lo_rad, options.hi_rad, options.tolerance_rad,
                                    options.scan_points);
    return {r.root.x, r.root.residual, std::move(r.warnings)};
  } catch (const NoRootError&) {
    throw NoPhaseMatchingError(fmt::format(
        "no type-{} phase matching for {} at lambda0 = {} um in [{:.3f}, {:.3f}] deg",
        to_string(setup.type), setup.crystal.name, setup.pump.lambda0_um,
        rad_to_deg(options.lo_rad), rad_to_deg(options.hi_rad)));
  }
}

WavelengthRoot solve_zero_mismatch_wavelength(const Setup& setup, MismatchKind kind,
                                              double lambda2_um, roots::Interval bracket_um,
                                              int scan_points) {
  if (kind == MismatchKind::TypeI) {
    require_type(setup, PhaseMatchingType::TypeI, "type-I mismatch");
  } else {
    require_type(setup, PhaseMatchingType::TypeII, "mismatch Delta12/Delta21");
  }
  const double omega2 = wavelength_to_frequency(lambda2_um);
  const auto f = [&](double lambda1) {
    return mismatch(setup, kind, wavelength_to_frequency(lambda1), omega2);
  };
  auto r = roots::find_first_root(f, bracket_um.lo, bracket_um.hi, kWavelengthTolerance, scan_points);
  return {r.root.x, r.root.residual, std::move(r.sign_changes), std::move(r.warnings)};
}

Setup make_setup(dispersion::CrystalModel crystal, PumpPulse pump, double length_um,
                 PhaseMatchingType type, std::optional<double> cut_angle_rad) {
  Setup s{std::move(crystal), length_um, cut_angle_rad.value_or(std::numbers::pi / 4), type, pump};
  s.validate();
  if (!cut_angle_rad) s.cut_angle_rad = solve_degenerate_angle(s).angle_rad;
  return s;
}

}  // namespace phasematching
}  // namespace spdc
