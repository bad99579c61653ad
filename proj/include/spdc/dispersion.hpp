#pragma once

#include <string>
#include <variant>
#include <vector>

namespace spdc::dispersion {

// Functional forms understood by SellmeierSet.
//   PoleIr:    n^2 = A + B/(l^2 - C) - D*l^2                 coefficients {A, B, C, D}
//   PoleSum:   n^2 = A + sum_i B_i*l^2/(l^2 - C_i)            coefficients {A, B1, C1, B2, C2, ...}
enum class SellmeierForm { PoleIr, PoleSum };

SellmeierForm parse_sellmeier_form(const std::string& id);
std::string to_string(SellmeierForm form);

struct WavelengthRange {
  double lo_um = 0.0;
  double hi_um = 0.0;
  bool contains(double lambda_um) const { return lambda_um >= lo_um && lambda_um <= hi_um; }
};

class SellmeierSet {
 public:
  SellmeierSet(SellmeierForm form, std::vector<double> coefficients, WavelengthRange valid_range);

  SellmeierForm form() const { return form_; }
  const std::vector<double>& coefficients() const { return coefficients_; }
  const WavelengthRange& valid_range() const { return range_; }

  /// Refractive index at lambda (um). Throws RangeError outside valid_range().
  double index(double lambda_um) const;
  /// Analytic dn/dlambda in 1/um.
  double index_derivative(double lambda_um) const;

 private:
  void check_range(double lambda_um) const;
  double n_squared(double lambda_um) const;
  double n_squared_derivative(double lambda_um) const;

  SellmeierForm form_;
  std::vector<double> coefficients_;
  WavelengthRange range_;
};

struct CrystalModel {
  std::string name;
  std::string set_id;
  SellmeierSet ordinary;
  SellmeierSet extraordinary;

  /// Intersection of the ordinary and extraordinary validity ranges.
  WavelengthRange valid_range() const;
};

struct Ordinary {};
struct ExtraordinaryPrincipal {};
struct ExtraordinaryAtAngle {
  double angle_rad;
};
using RayKind = std::variant<Ordinary, ExtraordinaryPrincipal, ExtraordinaryAtAngle>;

double index_ordinary(const CrystalModel& crystal, double lambda_um);
double index_extraordinary_principal(const CrystalModel& crystal, double lambda_um);
/// n_o n_e / sqrt((n_o sin phi)^2 + (n_e cos phi)^2), phi in [0, pi/2].
double index_extraordinary_at_angle(const CrystalModel& crystal, double lambda_um, double angle_rad);
double index(const CrystalModel& crystal, const RayKind& ray, double lambda_um);

/// k = n*omega/c in 1/um.
double wave_number(double index, double omega_radfs);
double wave_number(const CrystalModel& crystal, const RayKind& ray, double omega_radfs);

/// Group velocity (dk/domega)^-1 in um/fs from the analytic Sellmeier derivative.
double group_velocity(const CrystalModel& crystal, const RayKind& ray, double lambda_um);

/// Central-difference variant; throws RangeError if the stencil leaves the valid range.
inline constexpr double kDefaultFrequencyStep = 1e-4;  // rad/fs
double group_velocity_fd(const CrystalModel& crystal, const RayKind& ray, double lambda_um,
                         double step_radfs = kDefaultFrequencyStep);

}  // namespace spdc::dispersion
