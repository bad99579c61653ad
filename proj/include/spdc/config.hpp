#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "spdc/phasematching.hpp"
#include "spdc/spectra.hpp"

namespace spdc::config {

enum class SweepParameter { Lambda2, Tau, Length, Angle };

std::string to_string(SweepParameter p);
SweepParameter parse_sweep_parameter(const std::string& text);

struct SweepSpec {
  SweepParameter parameter = SweepParameter::Lambda2;
  double from = 0.0;
  double to = 0.0;
  int steps = 2;

  double value(int i) const;
  bool operator==(const SweepSpec&) const = default;
};

/// Everything a CLI run needs. Ini sections: [crystal] [pump] [setup] [grid]
/// [detection] [output] [sweep].
struct RunConfig {
  std::string crystal = "LiIO3";
  std::optional<std::string> sellmeier_set;
  std::optional<std::string> data_file;

  PumpPulse pump{0.3975, 50.0};

  double length_um = 1.0e4;
  phasematching::PhaseMatchingType pm_type = phasematching::PhaseMatchingType::TypeII;
  std::optional<double> cut_angle_deg;

  spectra::SpectralGrid grid{spectra::Axis::Wavelength, 0.75, 0.85, spectra::kDefaultGridPoints};

  double lambda2_um = 0.79;
  spectra::DetectionMode mode = spectra::DetectionMode::Unpolarized;

  std::optional<std::string> output_path;
  bool normalize = true;

  std::optional<SweepSpec> sweep;

  /// Structural checks only; physics checks happen when the setup is built.
  void validate() const;
  bool operator==(const RunConfig&) const = default;
};

using KeyValues = std::vector<std::pair<std::string, std::string>>;

/// Parses ini text; unknown sections or keys are rejected with UsageError.
RunConfig parse_config(const std::string& ini_text);
RunConfig load_config(const std::filesystem::path& path);

/// Canonical `section.key` / value pairs; parse_key_values inverts it exactly.
KeyValues to_key_values(const RunConfig& config);
RunConfig parse_key_values(const KeyValues& entries);

/// Writes the canonical ini form.
std::string to_ini(const RunConfig& config);

/// Pulls `config.<section>.<key>` entries out of CSV metadata.
RunConfig from_metadata(const spectra::Metadata& metadata);
inline constexpr const char* kMetadataPrefix = "config.";

/// "start:stop:points" or "axis:start:stop:points".
spectra::SpectralGrid parse_grid_spec(const std::string& text);

}  // namespace spdc::config
