#include "spdc/peaks.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "spdc/constants.hpp"
#include "spdc/error.hpp"

namespace spdc::peaks {

using phasematching::PhaseMatchingType;
namespace disp = spdc::dispersion;

WalkOffParams walk_off_from_velocities(double v_p, double v_o, double v_e) {
  for (double v : {v_p, v_o, v_e}) {
    if (!(v > 0.0 && v < kSpeedOfLight)) {
      throw UsageError(fmt::format("group velocity {} um/fs outside (0, c)", v));
    }
  }
  return {v_p, v_o, v_e, kSpeedOfLight * (1.0 / v_p - 1.0 / v_o),
          kSpeedOfLight * (1.0 / v_p - 1.0 / v_e)};
}

WalkOffParams walk_off_constants(const Setup& setup) {
  setup.validate();
  const disp::ExtraordinaryAtAngle extraordinary{setup.cut_angle_rad};
  const double lambda0 = setup.pump.lambda0_um;
  return walk_off_from_velocities(
      disp::group_velocity(setup.crystal, extraordinary, lambda0),
      disp::group_velocity(setup.crystal, disp::Ordinary{}, 2.0 * lambda0),
      disp::group_velocity(setup.crystal, extraordinary, 2.0 * lambda0));
}

std::string to_string(PeakLabel label) { return label == PeakLabel::Far ? "far" : "near"; }

PeakPair<double> peak_positions(const WalkOffParams& p, double nu2) {
  return {-nu2 * p.a_e / p.a_o, -nu2 * p.a_o / p.a_e};
}

PeakPair<double> peak_positions_wavelength(const WalkOffParams& p, double lambda2_um,
                                           double lambda0_um) {
  const double center = 2.0 * lambda0_um;
  const double d = lambda2_um - center;
  return {center - d * p.a_e / p.a_o, center - d * p.a_o / p.a_e};
}

PeakPair<PeakWidth> peak_widths(const WalkOffParams& p, double length_um, double lambda0_um) {
  if (!(length_um > 0.0)) throw UsageError("crystal length must be positive");
  const double center = 2.0 * lambda0_um;
  const auto width = [&](double a) {
    const double nu = 2.0 * spectra::kSincSquaredHalfMax * 2.0 * kSpeedOfLight / (length_um * std::abs(a));
    return PeakWidth{nu, center * center * nu / (kTwoPi * kSpeedOfLight)};
  };
  return {width(p.a_o), width(p.a_e)};
}

PeakPair<double> peak_heights(const WalkOffParams& p, double nu2, double tau_fs) {
  const double base = (p.a_e - p.a_o) * (p.a_e - p.a_o) * nu2 * nu2 * tau_fs * tau_fs /
                      (4.0 * std::numbers::ln2);
  return {std::exp(-base / (p.a_o * p.a_o)), std::exp(-base / (p.a_e * p.a_e))};
}

double height_ratio(const WalkOffParams& p, double nu2, double tau_fs) {
  const double ao2 = p.a_o * p.a_o;
  const double ae2 = p.a_e * p.a_e;
  const double d = p.a_e - p.a_o;
  return std::exp((ae2 - ao2) * d * d / (ao2 * ae2) * nu2 * nu2 * tau_fs * tau_fs /
                  (4.0 * std::numbers::ln2));
}

MinimalRatio min_detuning_and_ratio(const WalkOffParams& p, double length_um, double tau_fs) {
  const double spread = p.a_e * p.a_e - p.a_o * p.a_o;
  if (std::abs(p.a_e - p.a_o) <= 1e-12 * std::max(std::abs(p.a_e), std::abs(p.a_o)) ||
      p.a_o == 0.0 || p.a_e == 0.0) {
    throw DegenerateWalkOffError("peaks merge for every detuning (A_e == A_o); type-I-like regime");
  }
  const double nu_min = std::abs(kSpeedOfLight / length_um * p.a_e * p.a_o / spread);
  // Height ratio evaluated at nu_min:
  // exp((A_e - A_o) / (A_e + A_o) * c^2 tau^2 / (4 L^2 ln 2)).
  const double ct_over_l = kSpeedOfLight * tau_fs / length_um;
  const double exponent = (p.a_e - p.a_o) / (p.a_e + p.a_o) * ct_over_l * ct_over_l /
                          (4.0 * std::numbers::ln2);
  return {nu_min, std::exp(exponent)};
}

ShortPulseCheck short_pulse_check(const WalkOffParams& p, double length_um, double tau_fs,
                                  double strictness) {
  const double to = length_um * std::abs(p.a_o) / kSpeedOfLight * 1e-3;
  const double te = length_um * std::abs(p.a_e) / kSpeedOfLight * 1e-3;
  return {tau_fs * 1e-3 < strictness * std::min(to, te), to, te, strictness};
}

namespace {

// Vertex of the parabola through three samples.
std::pair<double, double> parabolic_vertex(double x0, double y0, double x1, double y1, double x2,
                                           double y2) {
  const double d0 = x1 - x0;
  const double d2 = x1 - x2;
  const double denom = d0 * (y1 - y2) - d2 * (y1 - y0);
  if (denom == 0.0) return {x1, y1};
  const double xv = x1 - 0.5 * (d0 * d0 * (y1 - y2) - d2 * d2 * (y1 - y0)) / denom;
  // Lagrange form evaluated at the vertex.
  const double l0 = (xv - x1) * (xv - x2) / ((x0 - x1) * (x0 - x2));
  const double l1 = (xv - x0) * (xv - x2) / ((x1 - x0) * (x1 - x2));
  const double l2 = (xv - x0) * (xv - x1) / ((x2 - x0) * (x2 - x1));
  return {xv, y0 * l0 + y1 * l1 + y2 * l2};
}

}  // namespace

std::vector<DetectedPeak> detect_peaks(const spectra::SpectrumSamples& samples,
                                       const DetectOptions& options) {
  samples.validate();
  const auto& x = samples.positions;
  const auto& y = samples.values;
  const std::size_t n = y.size();
  const double global = *std::max_element(y.begin(), y.end());
  if (!(global > 0.0) || n < 3) return {};

  // Interior local maxima; plateaus collapse to their middle sample.
  std::vector<std::size_t> candidates;
  for (std::size_t i = 1; i + 1 < n;) {
    if (y[i] > y[i - 1]) {
      std::size_t j = i;
      while (j + 1 < n && y[j + 1] == y[i]) ++j;
      if (j + 1 < n && y[j + 1] < y[i]) candidates.push_back((i + j) / 2);
      i = j + 1;
    } else {
      ++i;
    }
  }

  const auto prominence = [&](std::size_t i) {
    double left_base = y[i];
    std::size_t l = i;
    while (l > 0 && y[l - 1] <= y[i]) left_base = std::min(left_base, y[--l]);
    double right_base = y[i];
    std::size_t r = i;
    while (r + 1 < n && y[r + 1] <= y[i]) right_base = std::min(right_base, y[++r]);
    return y[i] - std::max(left_base, right_base);
  };

  std::sort(candidates.begin(), candidates.end(),
            [&](std::size_t a, std::size_t b) { return y[a] > y[b] || (y[a] == y[b] && a < b); });
  std::vector<std::size_t> accepted;
  std::vector<double> widths(n, 0.0);
  for (std::size_t c : candidates) {
    if (y[c] < options.min_relative_height * global) break;
    if (prominence(c) < options.min_valley_prominence * y[c]) continue;
    if (!accepted.empty()) {
      const auto parent = *std::min_element(accepted.begin(), accepted.end(), [&](auto a, auto b) {
        const auto da = a > c ? a - c : c - a;
        const auto db = b > c ? b - c : c - b;
        return da < db;
      });
      if (y[c] < options.max_sidelobe_ratio * y[parent]) continue;
      if (y[c] < options.max_near_lobe_ratio * y[parent] &&
          std::abs(x[c] - x[parent]) < options.lobe_window_widths * widths[parent]) {
        continue;
      }
    }
    accepted.push_back(c);
    const auto w = spectra::half_max_crossings(x, y, c, 0.5 * y[c], 0, n - 1);
    widths[c] = std::abs(w.right - w.left);
  }
  std::sort(accepted.begin(), accepted.end());

  std::vector<DetectedPeak> out;
  for (std::size_t k = 0; k < accepted.size(); ++k) {
    const std::size_t i = accepted[k];
    // Valley bounds: minima between neighbouring accepted peaks, or the edges.
    std::size_t lo = 0;
    std::size_t hi = n - 1;
    if (k > 0) {
      lo = static_cast<std::size_t>(
          std::min_element(y.begin() + static_cast<long>(accepted[k - 1]), y.begin() + static_cast<long>(i) + 1) -
          y.begin());
    }
    if (k + 1 < accepted.size()) {
      hi = static_cast<std::size_t>(
          std::min_element(y.begin() + static_cast<long>(i), y.begin() + static_cast<long>(accepted[k + 1]) + 1) -
          y.begin());
    }
    const auto [xv, yv] = parabolic_vertex(x[i - 1], y[i - 1], x[i], y[i], x[i + 1], y[i + 1]);
    const auto c = spectra::half_max_crossings(x, y, i, 0.5 * yv, lo, hi);
    out.push_back({xv, yv, std::abs(c.right - c.left), !(c.left_found && c.right_found), i});
  }
  return out;
}

namespace {

double to_grid_units(spectra::Axis axis, double omega) {
  return axis == spectra::Axis::Wavelength ? frequency_to_wavelength(omega) : omega;
}

}  // namespace

PeakReport build_report(const Setup& setup, double lambda2_um, const spectra::SpectralGrid& grid,
                        const DetectOptions& options) {
  setup.validate();
  grid.validate();
  PeakReport report;
  report.setup = spectra::setup_metadata(setup);
  report.fixed_lambda2_um = lambda2_um;
  report.axis = grid.axis;
  const double half = setup.pump.omega0() / 2.0;
  report.nu2 = wavelength_to_frequency(lambda2_um) - half;
  report.walk_off = walk_off_constants(setup);

  // Type I: both photons ordinary, so the extraordinary constant is replaced by A_o.
  WalkOffParams& model = report.walk_off;
  if (setup.type == PhaseMatchingType::TypeI) {
    model.v_e = model.v_o;
    model.a_e = model.a_o;
    report.notes.push_back(
        "type-I setup: both photons are ordinary, A_e equals A_o and the two peaks coincide");
  }

  const auto pos = peak_positions(model, report.nu2);
  const auto widths = peak_widths(model, setup.length_um, setup.pump.lambda0_um);
  const auto heights = peak_heights(model, report.nu2, setup.pump.tau_fs);
  const auto analytic = [&](PeakLabel label, double nu1, PeakWidth w, double h) {
    return AnalyticPeak{label, nu1, frequency_to_wavelength(half + nu1), w.nu, w.lambda_um, h};
  };
  report.analytic = {analytic(PeakLabel::Far, pos.far, widths.far, heights.far),
                     analytic(PeakLabel::Near, pos.near, widths.near, heights.near)};
  report.ratio_analytic =
      setup.type == PhaseMatchingType::TypeI ? 1.0 : height_ratio(model, report.nu2, setup.pump.tau_fs);
  report.short_pulse = short_pulse_check(model, setup.length_um, setup.pump.tau_fs);
  if (!report.short_pulse.ok) {
    report.warnings.push_back(fmt::format(
        "pulse duration {} fs is not short against L*A/c = {:.4g} ps; the analytic peak model "
        "may not apply",
        setup.pump.tau_fs, std::min(report.short_pulse.threshold_o_ps, report.short_pulse.threshold_e_ps)));
  }

  const auto& far = report.analytic[0];
  const auto& near = report.analytic[1];
  const bool wavelength_axis = grid.axis == spectra::Axis::Wavelength;
  const auto width_of = [&](const AnalyticPeak& p) { return wavelength_axis ? p.width_lambda_um : p.width_nu; };
  const auto position_of = [&](const AnalyticPeak& p) { return to_grid_units(grid.axis, half + p.nu1); };
  report.merged = setup.type == PhaseMatchingType::TypeI ||
                  std::abs(far.lambda1_um - near.lambda1_um) <
                      0.5 * (far.width_lambda_um + near.width_lambda_um);
  const double visibility = std::min(far.height, near.height) / std::max(far.height, near.height);
  const bool far_visible =
      visibility >= std::max(options.min_relative_height, options.max_sidelobe_ratio);
  report.expected_peak_count = report.merged || !far_visible ? 1 : 2;
  if (!report.merged && !far_visible) {
    report.notes.push_back(fmt::format(
        "far peak height is {:.3g} of the near peak and falls below the detection threshold",
        visibility));
  }

  auto spectrum = spectra::conditional_spectrum(setup, spectra::DetectionMode::Unpolarized,
                                                lambda2_um, grid, /*normalize=*/true);
  report.numeric = detect_peaks(spectrum, options);
  report.warnings.insert(report.warnings.end(), spectrum.warnings.begin(), spectrum.warnings.end());

  const double center = to_grid_units(grid.axis, half);
  auto by_distance = report.numeric;
  std::sort(by_distance.begin(), by_distance.end(), [&](const auto& a, const auto& b) {
    return std::abs(a.position - center) > std::abs(b.position - center);
  });
  const auto deviation = [&](const DetectedPeak& num, const AnalyticPeak& ana) {
    return std::abs(num.position - position_of(ana)) / width_of(ana);
  };
  if (report.expected_peak_count == 2 && by_distance.size() == 2) {
    report.consistency = {{PeakLabel::Far, deviation(by_distance[0], far)},
                          {PeakLabel::Near, deviation(by_distance[1], near)}};
    report.ratio_numeric = by_distance[1].height / by_distance[0].height;
  } else if (report.expected_peak_count == 1 && by_distance.size() == 1) {
    const double d_far = deviation(by_distance[0], far);
    const double d_near = deviation(by_distance[0], near);
    report.consistency = {d_near <= d_far ? PeakConsistency{PeakLabel::Near, d_near}
                                          : PeakConsistency{PeakLabel::Far, d_far}};
  }
  if (static_cast<int>(report.numeric.size()) != report.expected_peak_count) {
    report.warnings.push_back(fmt::format("detected {} peaks, analytic model expects {}",
                                          report.numeric.size(), report.expected_peak_count));
  }
  report.consistent =
      static_cast<int>(report.numeric.size()) == report.expected_peak_count &&
      std::all_of(report.consistency.begin(), report.consistency.end(),
                  [](const PeakConsistency& c) { return c.deviation_widths <= 1.0; });
  return report;
}

}  // namespace spdc::peaks
