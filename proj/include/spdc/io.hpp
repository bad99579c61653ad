#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include <json.hpp>

#include "spdc/peaks.hpp"
#include "spdc/spectra.hpp"

namespace spdc::io {

/// "# key=value" metadata lines, then a `lambda_um,value` (or `omega_radfs,value`)
/// header and rows with 12 significant digits.
void write_csv(std::ostream& out, const spectra::SpectrumSamples& samples);
void write_csv(const std::filesystem::path& path, const spectra::SpectrumSamples& samples);

spectra::SpectrumSamples read_csv(std::istream& in);
spectra::SpectrumSamples read_csv(const std::filesystem::path& path);

nlohmann::ordered_json to_json(const peaks::PeakReport& report);

std::string format_number(double value);

}  // namespace spdc::io
