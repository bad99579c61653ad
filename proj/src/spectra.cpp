#include "spdc/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "spdc/constants.hpp"
#include "spdc/error.hpp"

namespace spdc::spectra {

using phasematching::PhaseMatchingType;

std::string to_string(Axis axis) { return axis == Axis::Wavelength ? "wavelength" : "frequency"; }

Axis parse_axis(const std::string& text) {
  if (text == "wavelength" || text == "lambda") return Axis::Wavelength;
  if (text == "frequency" || text == "omega") return Axis::Frequency;
  throw UsageError("unknown grid axis '" + text + "' (expected wavelength or frequency)");
}

void SpectralGrid::validate() const {
  if (points < 2) throw UsageError(fmt::format("grid needs at least 2 points, got {}", points));
  if (!(start < stop)) throw UsageError(fmt::format("grid start {} must be below stop {}", start, stop));
  if (!(start > 0.0)) throw UsageError(fmt::format("grid start must be positive, got {}", start));
}

double SpectralGrid::at(int i) const {
  return i == points - 1 ? stop : start + i * step();
}

std::vector<double> SpectralGrid::positions() const {
  validate();
  std::vector<double> out(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) out[static_cast<std::size_t>(i)] = at(i);
  return out;
}

void SpectrumSamples::validate() const {
  if (positions.size() != values.size()) {
    throw UsageError(fmt::format("spectrum has {} positions but {} values", positions.size(),
                                 values.size()));
  }
  if (values.size() < 2) throw UsageError("spectrum needs at least 2 samples");
  const bool rising = positions[1] > positions[0];
  for (std::size_t i = 1; i < positions.size(); ++i) {
    if ((positions[i] > positions[i - 1]) != rising || positions[i] == positions[i - 1]) {
      throw UsageError("spectrum positions must be strictly monotone");
    }
  }
  for (double v : values) {
    if (!(v >= 0.0)) throw UsageError("spectrum values must be nonnegative");
  }
}

std::string to_string(DetectionMode mode) {
  switch (mode) {
    case DetectionMode::Unpolarized: return "unpolarized";
    case DetectionMode::SelectOrdinaryAtFixed: return "ordinary";
    case DetectionMode::SelectExtraordinaryAtFixed: return "extraordinary";
  }
  return "?";
}

DetectionMode parse_mode(const std::string& text) {
  if (text == "unpolarized") return DetectionMode::Unpolarized;
  if (text == "ordinary") return DetectionMode::SelectOrdinaryAtFixed;
  if (text == "extraordinary") return DetectionMode::SelectExtraordinaryAtFixed;
  throw UsageError("unknown detection mode '" + text +
                   "' (expected unpolarized, ordinary or extraordinary)");
}

double pump_envelope_amplitude(const PumpPulse& pump, double omega1, double omega2) {
  const double detuning = omega1 + omega2 - pump.omega0();
  return std::exp(-detuning * detuning * pump.tau_fs * pump.tau_fs / (8.0 * std::numbers::ln2));
}

double sinc(double x) {
  if (std::abs(x) < 1e-4) {
    const double x2 = x * x;
    return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
  }
  return std::sin(x) / x;
}

namespace {

double sinc_squared(double x) {
  const double s = sinc(x);
  return s * s;
}

double envelope_squared(const PumpPulse& pump, double omega1, double omega2) {
  const double detuning = omega1 + omega2 - pump.omega0();
  return std::exp(-detuning * detuning * pump.tau_fs * pump.tau_fs / (4.0 * std::numbers::ln2));
}

double to_omega(Axis axis, double x) {
  return axis == Axis::Wavelength ? wavelength_to_frequency(x) : x;
}

std::string fmt_num(double v) { return fmt::format("{:.12g}", v); }

}  // namespace

double coincidence_density_type1(const Setup& setup, double omega1, double omega2) {
  const double arg = 0.5 * setup.length_um * phasematching::mismatch_type1(setup, omega1, omega2);
  return envelope_squared(setup.pump, omega1, omega2) * sinc_squared(arg);
}

double coincidence_density_type2(const Setup& setup, double omega1, double omega2,
                                 DetectionMode mode) {
  const double half_l = 0.5 * setup.length_um;
  const double envelope = envelope_squared(setup.pump, omega1, omega2);
  // Each term carries its own envelope product so that the unpolarized density is
  // bit-identical to the sum of the two polarized ones.
  double density = 0.0;
  if (mode != DetectionMode::SelectExtraordinaryAtFixed) {
    density += envelope * sinc_squared(half_l * phasematching::mismatch_12(setup, omega1, omega2));
  }
  if (mode != DetectionMode::SelectOrdinaryAtFixed) {
    density += envelope * sinc_squared(half_l * phasematching::mismatch_21(setup, omega1, omega2));
  }
  return density;
}

double coincidence_density(const Setup& setup, double omega1, double omega2, DetectionMode mode) {
  if (setup.type == PhaseMatchingType::TypeI) {
    if (mode != DetectionMode::Unpolarized) {
      throw UsageError("polarization-selective detection requires a type-II setup");
    }
    return coincidence_density_type1(setup, omega1, omega2);
  }
  return coincidence_density_type2(setup, omega1, omega2, mode);
}

Metadata setup_metadata(const Setup& setup) {
  return {
      {"crystal", setup.crystal.name},
      {"sellmeier_set", setup.crystal.set_id},
      {"pm_type", phasematching::to_string(setup.type)},
      {"length_um", fmt_num(setup.length_um)},
      {"cut_angle_deg", fmt_num(rad_to_deg(setup.cut_angle_rad))},
      {"lambda0_um", fmt_num(setup.pump.lambda0_um)},
      {"tau_fs", fmt_num(setup.pump.tau_fs)},
  };
}

void normalize_peak(SpectrumSamples& samples) {
  const auto it = std::max_element(samples.values.begin(), samples.values.end());
  if (it != samples.values.end() && *it > 0.0) {
    const double peak = *it;
    for (double& v : samples.values) v /= peak;
  }
  samples.peak_normalized = true;
  for (auto& [k, v] : samples.metadata) {
    if (k == "normalized") v = "true";
  }
}

SpectrumSamples conditional_spectrum(const Setup& setup, DetectionMode mode, double fixed_lambda2_um,
                                     const SpectralGrid& grid, bool normalize) {
  grid.validate();
  if (setup.type == PhaseMatchingType::TypeI && mode != DetectionMode::Unpolarized) {
    throw UsageError("polarization-selective detection requires a type-II setup");
  }
  const double omega2 = wavelength_to_frequency(fixed_lambda2_um);
  SpectrumSamples out;
  out.axis = grid.axis;
  out.positions = grid.positions();
  out.values.resize(out.positions.size());
  for (std::size_t i = 0; i < out.positions.size(); ++i) {
    out.values[i] = coincidence_density(setup, to_omega(grid.axis, out.positions[i]), omega2, mode);
  }
  out.metadata = setup_metadata(setup);
  out.metadata.emplace_back("spectrum", "conditional");
  out.metadata.emplace_back("mode", to_string(mode));
  out.metadata.emplace_back("fixed_lambda2_um", fmt_num(fixed_lambda2_um));
  out.metadata.emplace_back("axis", to_string(grid.axis));
  out.metadata.emplace_back("normalized", "false");
  if (normalize) normalize_peak(out);
  return out;
}

namespace {

// Trapezoid rule on [a, b] with successive halving of the step until two estimates agree.
struct Quadrature {
  double value;
  bool converged;
  double max_sample;
  double boundary_max;
};

template <class F>
Quadrature adaptive_trapezoid(F&& f, double a, double b, const MarginalOptions& opt) {
  int intervals = std::max(opt.initial_points - 1, 2);
  double h = (b - a) / intervals;
  const double fa = f(a);
  const double fb = f(b);
  double max_sample = std::max(fa, fb);
  double sum = 0.5 * (fa + fb);
  for (int i = 1; i < intervals; ++i) {
    const double v = f(a + i * h);
    max_sample = std::max(max_sample, v);
    sum += v;
  }
  double estimate = sum * h;
  for (int level = 0; level < opt.max_refinements; ++level) {
    double added = 0.0;
    for (int i = 0; i < intervals; ++i) {
      const double v = f(a + (i + 0.5) * h);
      max_sample = std::max(max_sample, v);
      added += v;
    }
    sum += added;
    intervals *= 2;
    h *= 0.5;
    const double next = sum * h;
    const bool agree = std::abs(next - estimate) <= opt.rel_tolerance * std::abs(next);
    estimate = next;
    if (level >= 1 && (agree || next == 0.0)) {
      return {estimate, true, max_sample, std::max(fa, fb)};
    }
  }
  return {estimate, false, max_sample, std::max(fa, fb)};
}

}  // namespace

SpectrumSamples marginal_spectrum(const Setup& setup, const SpectralGrid& grid,
                                  const MarginalOptions& options, bool normalize) {
  grid.validate();
  const double omega0 = setup.pump.omega0();
  double half_window = options.half_window_radfs;
  if (half_window <= 0.0) {
    // Envelope FWHM in the sum frequency, at probability level.
    const double envelope = 4.0 * std::numbers::ln2 / setup.pump.tau_fs;
    // Main-lobe support of sinc^2 in omega2 from the local mismatch slope.
    const double half = omega0 / 2.0;
    const double h = 1e-4;
    const auto m = [&](double w2) {
      return setup.type == PhaseMatchingType::TypeI ? phasematching::mismatch_type1(setup, half, w2)
                                                    : phasematching::mismatch_12(setup, half, w2);
    };
    const double slope = std::max(std::abs((m(half + h) - m(half - h)) / (2.0 * h)), 1e-6);
    half_window = 5.0 * envelope + 2.0 * std::numbers::pi / (setup.length_um * slope);
  }
  const auto range = setup.crystal.valid_range();
  const double omega_min = wavelength_to_frequency(range.hi_um);
  const double omega_max = wavelength_to_frequency(range.lo_um);

  SpectrumSamples out;
  out.axis = grid.axis;
  out.positions = grid.positions();
  out.values.resize(out.positions.size());
  int unconverged = 0;
  int clipped = 0;
  double worst_boundary = 0.0;
  for (std::size_t i = 0; i < out.positions.size(); ++i) {
    const double omega1 = to_omega(grid.axis, out.positions[i]);
    double a = omega0 - omega1 - half_window;
    double b = omega0 - omega1 + half_window;
    if (a < omega_min || b > omega_max) {
      ++clipped;
      a = std::max(a, omega_min);
      b = std::min(b, omega_max);
    }
    const auto q = adaptive_trapezoid(
        [&](double omega2) { return coincidence_density(setup, omega1, omega2); }, a, b, options);
    out.values[i] = q.value;
    if (!q.converged) ++unconverged;
    if (q.max_sample > 0.0) worst_boundary = std::max(worst_boundary, q.boundary_max / q.max_sample);
  }
  if (worst_boundary > 1e-6) {
    out.warnings.push_back(fmt::format(
        "integration window too small: boundary density reaches {:.3g} of the maximum",
        worst_boundary));
  }
  if (unconverged > 0) {
    out.warnings.push_back(
        fmt::format("marginal quadrature did not converge at {} grid points", unconverged));
  }
  if (clipped > 0) {
    out.warnings.push_back(fmt::format(
        "integration window clipped to the crystal validity range at {} grid points", clipped));
  }
  out.metadata = setup_metadata(setup);
  out.metadata.emplace_back("spectrum", "marginal");
  out.metadata.emplace_back("axis", to_string(grid.axis));
  out.metadata.emplace_back("integration_half_window_radfs", fmt_num(half_window));
  out.metadata.emplace_back("normalized", "false");
  if (normalize) normalize_peak(out);
  return out;
}

HalfMaxCrossings half_max_crossings(const std::vector<double>& x, const std::vector<double>& y,
                                    std::size_t peak, double half, std::size_t lo, std::size_t hi) {
  const auto cross = [&](std::size_t inside, std::size_t outside) {
    const double t = (y[inside] - half) / (y[inside] - y[outside]);
    return x[inside] + t * (x[outside] - x[inside]);
  };
  HalfMaxCrossings c{x[lo], x[hi], false, false};
  for (std::size_t i = peak; i > lo; --i) {
    if (y[i - 1] < half) {
      c.left = cross(i, i - 1);
      c.left_found = true;
      break;
    }
  }
  for (std::size_t i = peak; i < hi; ++i) {
    if (y[i + 1] < half) {
      c.right = cross(i, i + 1);
      c.right_found = true;
      break;
    }
  }
  return c;
}

double fwhm(const SpectrumSamples& samples) {
  samples.validate();
  const auto& y = samples.values;
  const auto peak_it = std::max_element(y.begin(), y.end());
  const double peak = *peak_it;
  if (!(peak > 0.0)) throw WidthError(WidthErrorKind::NoPeak, "spectrum has no positive maximum");
  const auto ip = static_cast<std::size_t>(peak_it - y.begin());
  if (ip == 0 || ip == y.size() - 1) {
    throw WidthError(WidthErrorKind::PeakAtEdge,
                     "global maximum lies on the grid edge; widen the window");
  }
  const double half = 0.5 * peak;
  int regions = 0;
  bool inside = false;
  for (double v : y) {
    const bool above = v >= half;
    if (above && !inside) ++regions;
    inside = above;
  }
  if (regions != 1) {
    throw WidthError(WidthErrorKind::MultipleRegions,
                     fmt::format("{} disjoint regions above half maximum; restrict the window",
                                 regions));
  }
  const auto c = half_max_crossings(samples.positions, y, ip, half, 0, y.size() - 1);
  if (!c.left_found || !c.right_found) {
    throw WidthError(WidthErrorKind::PeakAtEdge, "half maximum not reached inside the window");
  }
  return std::abs(c.right - c.left);
}

SpectralGrid to_frequency_grid(const SpectralGrid& grid) {
  grid.validate();
  if (grid.axis == Axis::Frequency) return grid;
  return {Axis::Frequency, wavelength_to_frequency(grid.stop), wavelength_to_frequency(grid.start),
          grid.points};
}

EntanglementRatio entanglement_ratio(const Setup& setup, DetectionMode mode, double fixed_lambda2_um,
                                     const SpectralGrid& conditional_grid,
                                     const SpectralGrid& marginal_grid,
                                     const MarginalOptions& options) {
  const auto cond =
      conditional_spectrum(setup, mode, fixed_lambda2_um, to_frequency_grid(conditional_grid));
  const auto marg = marginal_spectrum(setup, to_frequency_grid(marginal_grid), options);
  const double wc = fwhm(cond);
  const double ws = fwhm(marg);
  return {ws / wc, wc, ws};
}

}  // namespace spdc::spectra
