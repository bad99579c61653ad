#pragma once

#include <string>
#include <utility>
#include <vector>

#include "spdc/phasematching.hpp"

namespace spdc::spectra {

using phasematching::Setup;

enum class Axis { Wavelength, Frequency };

std::string to_string(Axis axis);
Axis parse_axis(const std::string& text);

/// Uniform sampling grid; wavelength in um or angular frequency in rad/fs.
struct SpectralGrid {
  Axis axis = Axis::Wavelength;
  double start = 0.0;
  double stop = 0.0;
  int points = 4001;

  void validate() const;
  bool operator==(const SpectralGrid&) const = default;
  double at(int i) const;
  double step() const { return (stop - start) / (points - 1); }
  std::vector<double> positions() const;
};

inline constexpr int kDefaultGridPoints = 4001;

using Metadata = std::vector<std::pair<std::string, std::string>>;

/// Sampled spectrum in arbitrary units. Positions are strictly monotone but may run
/// in either direction.
struct SpectrumSamples {
  Axis axis = Axis::Wavelength;
  std::vector<double> positions;
  std::vector<double> values;
  bool peak_normalized = false;
  Metadata metadata;
  std::vector<std::string> warnings;

  void validate() const;
  std::size_t size() const { return values.size(); }
};

/// Polarization selection at the two detectors (type II only for the selective modes).
enum class DetectionMode {
  Unpolarized,
  SelectOrdinaryAtFixed,       // scanned detector sees ordinary photons: Delta12 term
  SelectExtraordinaryAtFixed,  // scanned detector sees extraordinary photons: Delta21 term
};

std::string to_string(DetectionMode mode);
DetectionMode parse_mode(const std::string& text);

/// Amplitude Gaussian exp(-(w1+w2-w0)^2 tau^2 / (8 ln 2)).
double pump_envelope_amplitude(const PumpPulse& pump, double omega1, double omega2);

/// Unnormalized sin(x)/x, sinc(0) = 1.
double sinc(double x);

/// x > 0 where sinc^2(x) = 1/2.
inline constexpr double kSincSquaredHalfMax = 1.3915573782515103;

double coincidence_density_type1(const Setup& setup, double omega1, double omega2);
double coincidence_density_type2(const Setup& setup, double omega1, double omega2,
                                 DetectionMode mode);
/// Dispatches on setup.type; type I accepts only Unpolarized.
double coincidence_density(const Setup& setup, double omega1, double omega2,
                           DetectionMode mode = DetectionMode::Unpolarized);

Metadata setup_metadata(const Setup& setup);

/// Coincidence spectrum at a fixed partner wavelength, sampled on `grid`.
SpectrumSamples conditional_spectrum(const Setup& setup, DetectionMode mode, double fixed_lambda2_um,
                                     const SpectralGrid& grid, bool normalize = false);

struct MarginalOptions {
  /// Half-width of the omega2 integration window around omega0 - omega1; 0 selects
  /// five envelope widths plus the sinc main-lobe support.
  double half_window_radfs = 0.0;
  int initial_points = 1025;
  double rel_tolerance = 1e-6;
  int max_refinements = 12;
};

/// Single-photon spectrum: the unpolarized density integrated over omega2.
SpectrumSamples marginal_spectrum(const Setup& setup, const SpectralGrid& grid,
                                  const MarginalOptions& options = {}, bool normalize = false);

/// Full width at half maximum of the global peak, in grid units.
double fwhm(const SpectrumSamples& samples);

/// Linear interpolation of the half-max crossings around index `peak`, bounded to
/// [lo, hi]. Returns the bound itself when no crossing is found before it.
struct HalfMaxCrossings {
  double left;
  double right;
  bool left_found;
  bool right_found;
};
HalfMaxCrossings half_max_crossings(const std::vector<double>& x, const std::vector<double>& y,
                                    std::size_t peak, double half, std::size_t lo, std::size_t hi);

struct EntanglementRatio {
  double ratio;
  double conditional_fwhm_radfs;
  double marginal_fwhm_radfs;
};

/// R = marginal FWHM / conditional FWHM, both on frequency axes. Wavelength grids are
/// converted to frequency grids spanning the same window.
EntanglementRatio entanglement_ratio(const Setup& setup, DetectionMode mode, double fixed_lambda2_um,
                                     const SpectralGrid& conditional_grid,
                                     const SpectralGrid& marginal_grid,
                                     const MarginalOptions& options = {});

SpectralGrid to_frequency_grid(const SpectralGrid& grid);

void normalize_peak(SpectrumSamples& samples);

}  // namespace spdc::spectra
