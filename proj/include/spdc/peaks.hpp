#pragma once

#include <optional>
#include <string>
#include <vector>

#include "spdc/spectra.hpp"

namespace spdc::peaks {

using phasematching::Setup;

/// Group velocities (um/fs) and the dimensionless temporal walk-off constants
/// A_o = c(1/v_p - 1/v_o), A_e = c(1/v_p - 1/v_e).
struct WalkOffParams {
  double v_p = 0.0;
  double v_o = 0.0;
  double v_e = 0.0;
  double a_o = 0.0;
  double a_e = 0.0;
};

WalkOffParams walk_off_from_velocities(double v_p, double v_o, double v_e);

/// Pump at lambda0 (extraordinary at the cut angle), photons at 2*lambda0.
WalkOffParams walk_off_constants(const Setup& setup);

/// Far peak belongs to the Delta12 term, near peak to Delta21.
enum class PeakLabel { Far, Near };
std::string to_string(PeakLabel label);

template <class T>
struct PeakPair {
  T far;
  T near;
};

/// Detunings nu1 = omega1 - omega0/2 of the two peaks for partner detuning nu2.
PeakPair<double> peak_positions(const WalkOffParams& params, double nu2);

/// Linearized wavelength form around 2*lambda0.
PeakPair<double> peak_positions_wavelength(const WalkOffParams& params, double lambda2_um,
                                           double lambda0_um);

struct PeakWidth {
  double nu;         // rad/fs
  double lambda_um;  // at 2*lambda0
};

/// FWHM of the sinc^2 factors: 2 * 1.3916 * 2c / (L A).
PeakPair<PeakWidth> peak_widths(const WalkOffParams& params, double length_um, double lambda0_um);

/// Envelope value at each peak position, relative units.
PeakPair<double> peak_heights(const WalkOffParams& params, double nu2, double tau_fs);

/// Near-to-far height ratio h21 / h12.
double height_ratio(const WalkOffParams& params, double nu2, double tau_fs);

struct MinimalRatio {
  double min_detuning_radfs;
  double ratio;
};

/// Smallest partner detuning at which the peaks are still a width apart, and the
/// height ratio there. Throws DegenerateWalkOffError when A_e == A_o.
MinimalRatio min_detuning_and_ratio(const WalkOffParams& params, double length_um, double tau_fs);

inline constexpr double kShortPulseStrictness = 0.1;

struct ShortPulseCheck {
  bool ok;
  double threshold_o_ps;  // L A_o / c
  double threshold_e_ps;  // L A_e / c
  double strictness;
};

/// ok when tau < strictness * min(L A_o / c, L A_e / c).
ShortPulseCheck short_pulse_check(const WalkOffParams& params, double length_um, double tau_fs,
                                  double strictness = kShortPulseStrictness);

struct DetectedPeak {
  double position;
  double height;
  double fwhm;
  bool width_bounded;  // half maximum not reached before a valley; fwhm is a lower bound
  std::size_t index;
};

struct DetectOptions {
  double min_relative_height = 0.01;    // of the global maximum
  double min_valley_prominence = 0.2;   // of the peak's own height
  double max_sidelobe_ratio = 0.08;     // of the nearest accepted higher peak
  double max_near_lobe_ratio = 0.25;    // of a higher peak within
  double lobe_window_widths = 6.0;      // this many of its FWHMs
};

/// Local maxima of a noise-free spectrum, ordered by position along the sample order.
std::vector<DetectedPeak> detect_peaks(const spectra::SpectrumSamples& samples,
                                       const DetectOptions& options = {});

struct AnalyticPeak {
  PeakLabel label;
  double nu1;
  double lambda1_um;
  double width_nu;
  double width_lambda_um;
  double height;
};

struct PeakConsistency {
  PeakLabel label;
  double deviation_widths;  // |numeric - analytic| / analytic FWHM
};

struct PeakReport {
  spectra::Metadata setup;
  double fixed_lambda2_um = 0.0;
  double nu2 = 0.0;
  spectra::Axis axis = spectra::Axis::Wavelength;
  WalkOffParams walk_off;
  std::vector<AnalyticPeak> analytic;
  std::vector<DetectedPeak> numeric;
  std::vector<PeakConsistency> consistency;
  double ratio_analytic = 1.0;
  std::optional<double> ratio_numeric;
  ShortPulseCheck short_pulse{};
  bool merged = false;
  int expected_peak_count = 0;
  bool consistent = false;
  std::vector<std::string> warnings;
  std::vector<std::string> notes;
};

PeakReport build_report(const Setup& setup, double lambda2_um, const spectra::SpectralGrid& grid,
                        const DetectOptions& options = {});

}  // namespace spdc::peaks
