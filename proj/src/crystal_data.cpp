#include "spdc/crystal_data.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fmt/format.h>

#include "spdc/error.hpp"

namespace spdc::dispersion {

namespace pt = boost::property_tree;

namespace {

std::vector<double> parse_numbers(const std::string& text, const std::string& what) {
  std::istringstream in(text);
  std::vector<double> out;
  double v = 0.0;
  while (in >> v) out.push_back(v);
  if (!in.eof()) throw UsageError(fmt::format("{}: cannot parse '{}' as numbers", what, text));
  return out;
}

std::string required(const pt::ptree& node, const std::string& key, const std::string& where) {
  auto v = node.get_optional<std::string>(pt::ptree::path_type(key, '/'));
  if (!v || v->empty()) throw UsageError(fmt::format("{}: missing key '{}'", where, key));
  return *v;
}

}  // namespace

const SellmeierEntry& CrystalData::find_set(const std::string& id) const {
  for (const auto& s : sets) {
    if (s.id == id) return s;
  }
  throw UsageError(fmt::format("crystal {} has no Sellmeier set '{}'", name, id));
}

CrystalModel CrystalData::model(const std::optional<std::string>& set_id) const {
  const auto& e = find_set(set_id.value_or(default_set));
  return CrystalModel{name, e.id, SellmeierSet(e.form, e.ordinary, e.valid_range),
                      SellmeierSet(e.form, e.extraordinary, e.valid_range)};
}

CrystalData parse_crystal_data(const std::string& text) {
  pt::ptree tree;
  std::istringstream in(text);
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw UsageError(std::string("crystal data: ") + e.what());
  }

  CrystalData data;
  bool have_header = false;
  for (const auto& [section, node] : tree) {
    if (section == "crystal") {
      have_header = true;
      for (const auto& [key, value] : node) {
        if (key != "name" && key != "format_version" && key != "default_set") {
          throw UsageError("crystal data: unknown key '" + key + "' in [crystal]");
        }
      }
      data.name = required(node, "name", "[crystal]");
      data.format_version = node.get<int>("format_version", 1);
      data.default_set = required(node, "default_set", "[crystal]");
    } else if (section.rfind("set.", 0) == 0) {
      const std::string where = "[" + section + "]";
      SellmeierEntry e;
      e.id = section.substr(4);
      for (const auto& [key, value] : node) {
        if (key != "form" && key != "ordinary" && key != "extraordinary" &&
            key != "valid_range_um" && key != "source") {
          throw UsageError("crystal data: unknown key '" + key + "' in " + where);
        }
      }
      e.form = parse_sellmeier_form(required(node, "form", where));
      e.ordinary = parse_numbers(required(node, "ordinary", where), where + " ordinary");
      e.extraordinary =
          parse_numbers(required(node, "extraordinary", where), where + " extraordinary");
      const auto range =
          parse_numbers(required(node, "valid_range_um", where), where + " valid_range_um");
      if (range.size() != 2) throw UsageError(where + ": valid_range_um needs two numbers");
      e.valid_range = {range[0], range[1]};
      e.source = required(node, "source", where);
      data.sets.push_back(std::move(e));
    } else {
      throw UsageError("crystal data: unknown section [" + section + "]");
    }
  }
  if (!have_header) throw UsageError("crystal data: missing [crystal] section");
  if (data.format_version != 1) {
    throw UsageError(fmt::format("crystal data: unsupported format_version {}", data.format_version));
  }
  // Validates the default set and its coefficient counts eagerly.
  for (const auto& s : data.sets) data.model(s.id);
  data.find_set(data.default_set);
  return data;
}

CrystalData load_crystal_data(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open crystal data file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_crystal_data(buf.str());
}

std::filesystem::path default_data_dir() {
  if (const char* env = std::getenv("SPDC_DATA_DIR"); env != nullptr && *env != '\0') return env;
  return SPDC_DATA_DIR;
}

CrystalModel load_crystal(const std::string& name, const std::optional<std::string>& set_id,
                          const std::optional<std::filesystem::path>& data_file) {
  const auto path = data_file.value_or(default_data_dir() / (name + ".ini"));
  if (!std::filesystem::exists(path)) {
    throw UsageError(fmt::format("unknown crystal '{}' (no data file {})", name, path.string()));
  }
  auto data = load_crystal_data(path);
  if (data.name != name) {
    throw UsageError(
        fmt::format("crystal data file {} describes '{}', not '{}'", path.string(), data.name, name));
  }
  return data.model(set_id);
}

}  // namespace spdc::dispersion
