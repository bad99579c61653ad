#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "spdc/dispersion.hpp"

namespace spdc::dispersion {

struct SellmeierEntry {
  std::string id;
  SellmeierForm form;
  std::vector<double> ordinary;
  std::vector<double> extraordinary;
  WavelengthRange valid_range;
  std::string source;
};

struct CrystalData {
  std::string name;
  int format_version = 1;
  std::string default_set;
  std::vector<SellmeierEntry> sets;

  const SellmeierEntry& find_set(const std::string& id) const;
  /// Builds the model from the named set, or the default one.
  CrystalModel model(const std::optional<std::string>& set_id = std::nullopt) const;
};

CrystalData parse_crystal_data(const std::string& text);
CrystalData load_crystal_data(const std::filesystem::path& path);

/// Default data directory baked in at build time; overridable via SPDC_DATA_DIR.
std::filesystem::path default_data_dir();

/// Resolves `<dir>/<name>.ini`. Throws UsageError for unknown crystals.
CrystalModel load_crystal(const std::string& name,
                          const std::optional<std::string>& set_id = std::nullopt,
                          const std::optional<std::filesystem::path>& data_file = std::nullopt);

}  // namespace spdc::dispersion
