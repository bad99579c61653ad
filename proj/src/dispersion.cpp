#include "spdc/dispersion.hpp"

#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "spdc/constants.hpp"
#include "spdc/error.hpp"

namespace spdc {

RangeError::RangeError(double lambda_um, double lo_um, double hi_um)
    : Error(fmt::format("wavelength {:.6g} um outside Sellmeier validity range [{:.6g}, {:.6g}] um",
                        lambda_um, lo_um, hi_um)),
      lambda_(lambda_um),
      lo_(lo_um),
      hi_(hi_um) {}

double wavelength_to_frequency(double lambda_um) {
  if (!(lambda_um > 0.0)) {
    throw UsageError(fmt::format("wavelength must be positive, got {}", lambda_um));
  }
  return kTwoPi * kSpeedOfLight / lambda_um;
}

double frequency_to_wavelength(double omega_radfs) {
  if (!(omega_radfs > 0.0)) {
    throw UsageError(fmt::format("frequency must be positive, got {}", omega_radfs));
  }
  return kTwoPi * kSpeedOfLight / omega_radfs;
}

namespace dispersion {

SellmeierForm parse_sellmeier_form(const std::string& id) {
  if (id == "pole_ir") return SellmeierForm::PoleIr;
  if (id == "pole_sum") return SellmeierForm::PoleSum;
  throw UsageError("unknown Sellmeier form '" + id + "' (expected pole_ir or pole_sum)");
}

std::string to_string(SellmeierForm form) {
  return form == SellmeierForm::PoleIr ? "pole_ir" : "pole_sum";
}

SellmeierSet::SellmeierSet(SellmeierForm form, std::vector<double> coefficients,
                           WavelengthRange valid_range)
    : form_(form), coefficients_(std::move(coefficients)), range_(valid_range) {
  if (form_ == SellmeierForm::PoleIr && coefficients_.size() != 4) {
    throw UsageError(fmt::format("pole_ir form needs 4 coefficients, got {}", coefficients_.size()));
  }
  if (form_ == SellmeierForm::PoleSum && (coefficients_.size() < 3 || coefficients_.size() % 2 != 1)) {
    throw UsageError(
        fmt::format("pole_sum form needs 1 + 2k coefficients, got {}", coefficients_.size()));
  }
  if (!(range_.lo_um > 0.0) || !(range_.hi_um > range_.lo_um)) {
    throw UsageError(fmt::format("invalid Sellmeier range [{}, {}]", range_.lo_um, range_.hi_um));
  }
}

void SellmeierSet::check_range(double lambda_um) const {
  if (!range_.contains(lambda_um)) throw RangeError(lambda_um, range_.lo_um, range_.hi_um);
}

double SellmeierSet::n_squared(double l) const {
  const auto& c = coefficients_;
  const double l2 = l * l;
  if (form_ == SellmeierForm::PoleIr) {
    return c[0] + c[1] / (l2 - c[2]) - c[3] * l2;
  }
  double n2 = c[0];
  for (std::size_t i = 1; i + 1 < c.size(); i += 2) n2 += c[i] * l2 / (l2 - c[i + 1]);
  return n2;
}

double SellmeierSet::n_squared_derivative(double l) const {
  const auto& c = coefficients_;
  const double l2 = l * l;
  if (form_ == SellmeierForm::PoleIr) {
    const double d = l2 - c[2];
    return -2.0 * c[1] * l / (d * d) - 2.0 * c[3] * l;
  }
  double dn2 = 0.0;
  for (std::size_t i = 1; i + 1 < c.size(); i += 2) {
    const double d = l2 - c[i + 1];
    dn2 += -2.0 * c[i] * c[i + 1] * l / (d * d);
  }
  return dn2;
}

double SellmeierSet::index(double lambda_um) const {
  check_range(lambda_um);
  const double n2 = n_squared(lambda_um);
  if (!(n2 > 1.0)) {
    throw UsageError(fmt::format("Sellmeier set yields n^2 = {} <= 1 at {} um", n2, lambda_um));
  }
  return std::sqrt(n2);
}

double SellmeierSet::index_derivative(double lambda_um) const {
  const double n = index(lambda_um);
  return n_squared_derivative(lambda_um) / (2.0 * n);
}

WavelengthRange CrystalModel::valid_range() const {
  return {std::max(ordinary.valid_range().lo_um, extraordinary.valid_range().lo_um),
          std::min(ordinary.valid_range().hi_um, extraordinary.valid_range().hi_um)};
}

namespace {

void check_angle(double angle_rad) {
  if (!(angle_rad >= 0.0 && angle_rad <= std::numbers::pi / 2)) {
    throw UsageError(fmt::format("propagation angle {} rad outside [0, pi/2]", angle_rad));
  }
}

struct IndexAndSlope {
  double n;
  double dn_dlambda;
};

IndexAndSlope angled(const CrystalModel& crystal, double lambda_um, double angle_rad) {
  const double no = crystal.ordinary.index(lambda_um);
  const double ne = crystal.extraordinary.index(lambda_um);
  const double s = std::sin(angle_rad);
  const double c = std::cos(angle_rad);
  const double denom = (no * s) * (no * s) + (ne * c) * (ne * c);
  const double root = std::sqrt(denom);
  const double n = no * ne / root;
  // Partial derivatives of n(no, ne) at fixed angle.
  const double dn_dno = ne * ne * ne * c * c / (denom * root);
  const double dn_dne = no * no * no * s * s / (denom * root);
  return {n, dn_dno * crystal.ordinary.index_derivative(lambda_um) +
                 dn_dne * crystal.extraordinary.index_derivative(lambda_um)};
}

IndexAndSlope index_and_slope(const CrystalModel& crystal, const RayKind& ray, double lambda_um) {
  return std::visit(
      [&](const auto& r) -> IndexAndSlope {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, Ordinary>) {
          return {crystal.ordinary.index(lambda_um), crystal.ordinary.index_derivative(lambda_um)};
        } else if constexpr (std::is_same_v<T, ExtraordinaryPrincipal>) {
          return {crystal.extraordinary.index(lambda_um),
                  crystal.extraordinary.index_derivative(lambda_um)};
        } else {
          check_angle(r.angle_rad);
          return angled(crystal, lambda_um, r.angle_rad);
        }
      },
      ray);
}

}  // namespace

double index_ordinary(const CrystalModel& crystal, double lambda_um) {
  return crystal.ordinary.index(lambda_um);
}

double index_extraordinary_principal(const CrystalModel& crystal, double lambda_um) {
  return crystal.extraordinary.index(lambda_um);
}

double index_extraordinary_at_angle(const CrystalModel& crystal, double lambda_um,
                                    double angle_rad) {
  check_angle(angle_rad);
  const double no = crystal.ordinary.index(lambda_um);
  const double ne = crystal.extraordinary.index(lambda_um);
  // Exact limits; the general expression is only accurate to rounding there.
  if (angle_rad == 0.0) return no;
  if (angle_rad == std::numbers::pi / 2) return ne;
  const double s = no * std::sin(angle_rad);
  const double c = ne * std::cos(angle_rad);
  return no * ne / std::sqrt(s * s + c * c);
}

double index(const CrystalModel& crystal, const RayKind& ray, double lambda_um) {
  return std::visit(
      [&](const auto& r) -> double {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, Ordinary>) {
          return index_ordinary(crystal, lambda_um);
        } else if constexpr (std::is_same_v<T, ExtraordinaryPrincipal>) {
          return index_extraordinary_principal(crystal, lambda_um);
        } else {
          return index_extraordinary_at_angle(crystal, lambda_um, r.angle_rad);
        }
      },
      ray);
}

double wave_number(double index, double omega_radfs) {
  if (!(omega_radfs > 0.0)) {
    throw UsageError(fmt::format("frequency must be positive, got {}", omega_radfs));
  }
  return index * omega_radfs / kSpeedOfLight;
}

double wave_number(const CrystalModel& crystal, const RayKind& ray, double omega_radfs) {
  return wave_number(index(crystal, ray, frequency_to_wavelength(omega_radfs)), omega_radfs);
}

double group_velocity(const CrystalModel& crystal, const RayKind& ray, double lambda_um) {
  // dk/domega = (n - lambda dn/dlambda) / c
  const auto [n, slope] = index_and_slope(crystal, ray, lambda_um);
  return kSpeedOfLight / (n - lambda_um * slope);
}

double group_velocity_fd(const CrystalModel& crystal, const RayKind& ray, double lambda_um,
                         double step_radfs) {
  const double omega = wavelength_to_frequency(lambda_um);
  const double kp = wave_number(crystal, ray, omega + step_radfs);
  const double km = wave_number(crystal, ray, omega - step_radfs);
  return 2.0 * step_radfs / (kp - km);
}

}  // namespace dispersion
}  // namespace spdc
