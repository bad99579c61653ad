#include "spdc/io.hpp"

#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "spdc/constants.hpp"
#include "spdc/error.hpp"

namespace spdc::io {

using nlohmann::ordered_json;

std::string format_number(double value) { return fmt::format("{:.12g}", value); }

void write_csv(std::ostream& out, const spectra::SpectrumSamples& samples) {
  for (const auto& [key, value] : samples.metadata) out << "# " << key << '=' << value << '\n';
  out << (samples.axis == spectra::Axis::Wavelength ? "lambda_um" : "omega_radfs") << ",value\n";
  for (std::size_t i = 0; i < samples.size(); ++i) {
    out << format_number(samples.positions[i]) << ',' << format_number(samples.values[i]) << '\n';
  }
}

void write_csv(const std::filesystem::path& path, const spectra::SpectrumSamples& samples) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write " + path.string());
  write_csv(out, samples);
}

spectra::SpectrumSamples read_csv(std::istream& in) {
  spectra::SpectrumSamples s;
  std::string line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line.rfind("# ", 0) == 0) {
      const auto eq = line.find('=');
      if (eq == std::string::npos) throw UsageError("malformed metadata line: " + line);
      s.metadata.emplace_back(line.substr(2, eq - 2), line.substr(eq + 1));
      continue;
    }
    if (!header_seen) {
      if (line == "lambda_um,value") {
        s.axis = spectra::Axis::Wavelength;
      } else if (line == "omega_radfs,value") {
        s.axis = spectra::Axis::Frequency;
      } else {
        throw UsageError("unexpected CSV header: " + line);
      }
      header_seen = true;
      continue;
    }
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw UsageError("malformed CSV row: " + line);
    s.positions.push_back(std::stod(line.substr(0, comma)));
    s.values.push_back(std::stod(line.substr(comma + 1)));
  }
  if (!header_seen) throw UsageError("CSV has no column header");
  for (const auto& [k, v] : s.metadata) {
    if (k == "normalized") s.peak_normalized = v == "true";
  }
  return s;
}

spectra::SpectrumSamples read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path.string());
  return read_csv(in);
}

ordered_json to_json(const peaks::PeakReport& r) {
  ordered_json j;
  ordered_json setup = ordered_json::object();
  for (const auto& [k, v] : r.setup) setup[k] = v;
  j["setup"] = setup;
  j["fixed_lambda2_um"] = r.fixed_lambda2_um;
  j["nu2_radfs"] = r.nu2;
  j["axis"] = spectra::to_string(r.axis);
  j["walk_off"] = {{"v_p_over_c", r.walk_off.v_p / kSpeedOfLight},
                   {"v_o_over_c", r.walk_off.v_o / kSpeedOfLight},
                   {"v_e_over_c", r.walk_off.v_e / kSpeedOfLight},
                   {"A_o", r.walk_off.a_o},
                   {"A_e", r.walk_off.a_e}};
  j["analytic"] = ordered_json::array();
  for (const auto& p : r.analytic) {
    j["analytic"].push_back({{"label", peaks::to_string(p.label)},
                             {"nu1_radfs", p.nu1},
                             {"lambda1_um", p.lambda1_um},
                             {"width_radfs", p.width_nu},
                             {"width_um", p.width_lambda_um},
                             {"height", p.height}});
  }
  j["numeric"] = ordered_json::array();
  for (const auto& p : r.numeric) {
    j["numeric"].push_back({{"position", p.position},
                            {"height", p.height},
                            {"fwhm", p.fwhm},
                            {"width_bounded", p.width_bounded}});
  }
  j["consistency"] = ordered_json::array();
  for (const auto& c : r.consistency) {
    j["consistency"].push_back(
        {{"label", peaks::to_string(c.label)}, {"deviation_widths", c.deviation_widths}});
  }
  j["ratio_analytic"] = r.ratio_analytic;
  j["ratio_numeric"] = r.ratio_numeric ? ordered_json(*r.ratio_numeric) : ordered_json(nullptr);
  j["short_pulse_ok"] = r.short_pulse.ok;
  j["short_pulse"] = {{"threshold_o_ps", r.short_pulse.threshold_o_ps},
                      {"threshold_e_ps", r.short_pulse.threshold_e_ps},
                      {"strictness", r.short_pulse.strictness}};
  j["merged"] = r.merged;
  j["expected_peak_count"] = r.expected_peak_count;
  j["consistent"] = r.consistent;
  j["warnings"] = r.warnings;
  j["notes"] = r.notes;
  return j;
}

}  // namespace spdc::io
