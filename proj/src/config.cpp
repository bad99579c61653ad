#include "spdc/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fmt/format.h>

#include "spdc/error.hpp"

namespace spdc::config {

namespace pt = boost::property_tree;

std::string to_string(SweepParameter p) {
  switch (p) {
    case SweepParameter::Lambda2: return "lambda2_um";
    case SweepParameter::Tau: return "tau_fs";
    case SweepParameter::Length: return "length_um";
    case SweepParameter::Angle: return "cut_angle_deg";
  }
  return "?";
}

SweepParameter parse_sweep_parameter(const std::string& text) {
  if (text == "lambda2_um" || text == "lambda2") return SweepParameter::Lambda2;
  if (text == "tau_fs" || text == "tau") return SweepParameter::Tau;
  if (text == "length_um" || text == "length") return SweepParameter::Length;
  if (text == "cut_angle_deg" || text == "angle") return SweepParameter::Angle;
  throw UsageError("unknown sweep parameter '" + text +
                   "' (expected lambda2_um, tau_fs, length_um or cut_angle_deg)");
}

double SweepSpec::value(int i) const {
  if (i == steps - 1) return to;
  return from + (to - from) * i / (steps - 1);
}

void RunConfig::validate() const {
  if (crystal.empty()) throw UsageError("crystal name is empty");
  pump.validate();
  if (!(length_um > 0.0)) throw UsageError(fmt::format("setup.length_um must be > 0, got {}", length_um));
  if (cut_angle_deg && !(*cut_angle_deg >= 0.0 && *cut_angle_deg <= 90.0)) {
    throw UsageError(fmt::format("setup.cut_angle_deg must lie in [0, 90], got {}", *cut_angle_deg));
  }
  grid.validate();
  if (!(lambda2_um > 0.0)) throw UsageError(fmt::format("detection.lambda2_um must be > 0, got {}", lambda2_um));
  if (pm_type == phasematching::PhaseMatchingType::TypeI && mode != spectra::DetectionMode::Unpolarized) {
    throw UsageError("polarization-selective detection modes require pm_type = II");
  }
  if (sweep) {
    if (sweep->steps < 2) throw UsageError(fmt::format("sweep.steps must be >= 2, got {}", sweep->steps));
    if (!(sweep->from != sweep->to)) throw UsageError("sweep range is empty (from == to)");
    if (!std::isfinite(sweep->from) || !std::isfinite(sweep->to)) throw UsageError("sweep range is not finite");
  }
}

namespace {

const std::vector<std::pair<std::string, std::set<std::string>>>& schema() {
  static const std::vector<std::pair<std::string, std::set<std::string>>> s = {
      {"crystal", {"name", "sellmeier_set", "data_file"}},
      {"pump", {"lambda0_um", "tau_fs"}},
      {"setup", {"length_um", "pm_type", "cut_angle_deg"}},
      {"grid", {"axis", "start", "stop", "points"}},
      {"detection", {"lambda2_um", "mode"}},
      {"output", {"path", "normalize"}},
      {"sweep", {"parameter", "from", "to", "steps"}},
  };
  return s;
}

double to_double(const std::string& key, const std::string& text) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) throw UsageError(fmt::format("{}: '{}' is not a number", key, text));
  return v;
}

int to_int(const std::string& key, const std::string& text) {
  const double v = to_double(key, text);
  if (v != std::floor(v) || std::abs(v) > 1e9) throw UsageError(fmt::format("{}: '{}' is not an integer", key, text));
  return static_cast<int>(v);
}

bool to_bool(const std::string& key, const std::string& text) {
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  throw UsageError(fmt::format("{}: '{}' is not a boolean", key, text));
}

std::string num(double v) { return fmt::format("{}", v); }

RunConfig from_tree(const pt::ptree& tree) {
  for (const auto& [section, node] : tree) {
    const auto it = std::find_if(schema().begin(), schema().end(),
                                 [&](const auto& s) { return s.first == section; });
    if (it == schema().end()) throw UsageError("unknown config section [" + section + "]");
    if (!node.data().empty()) throw UsageError("config key '" + section + "' outside a section");
    for (const auto& [key, value] : node) {
      if (!it->second.contains(key)) {
        throw UsageError("unknown config key '" + key + "' in [" + section + "]");
      }
    }
  }
  const auto get = [&](const std::string& section, const std::string& key) -> std::optional<std::string> {
    const auto child = tree.get_child_optional(pt::ptree::path_type(section, '/'));
    if (!child) return std::nullopt;
    const auto v = child->get_optional<std::string>(pt::ptree::path_type(key, '/'));
    if (!v || v->empty()) return std::nullopt;
    return *v;
  };

  RunConfig c;
  if (auto v = get("crystal", "name")) c.crystal = *v;
  if (auto v = get("crystal", "sellmeier_set")) c.sellmeier_set = *v;
  if (auto v = get("crystal", "data_file")) c.data_file = *v;
  if (auto v = get("pump", "lambda0_um")) c.pump.lambda0_um = to_double("pump.lambda0_um", *v);
  if (auto v = get("pump", "tau_fs")) c.pump.tau_fs = to_double("pump.tau_fs", *v);
  if (auto v = get("setup", "length_um")) c.length_um = to_double("setup.length_um", *v);
  if (auto v = get("setup", "pm_type")) c.pm_type = phasematching::parse_pm_type(*v);
  if (auto v = get("setup", "cut_angle_deg")) c.cut_angle_deg = to_double("setup.cut_angle_deg", *v);
  if (auto v = get("grid", "axis")) c.grid.axis = spectra::parse_axis(*v);
  if (auto v = get("grid", "start")) c.grid.start = to_double("grid.start", *v);
  if (auto v = get("grid", "stop")) c.grid.stop = to_double("grid.stop", *v);
  if (auto v = get("grid", "points")) c.grid.points = to_int("grid.points", *v);
  if (auto v = get("detection", "lambda2_um")) c.lambda2_um = to_double("detection.lambda2_um", *v);
  if (auto v = get("detection", "mode")) c.mode = spectra::parse_mode(*v);
  if (auto v = get("output", "path")) c.output_path = *v;
  if (auto v = get("output", "normalize")) c.normalize = to_bool("output.normalize", *v);
  if (tree.get_child_optional("sweep")) {
    SweepSpec s;
    const auto need = [&](const std::string& key) {
      auto v = get("sweep", key);
      if (!v) throw UsageError("sweep section needs key '" + key + "'");
      return *v;
    };
    s.parameter = parse_sweep_parameter(need("parameter"));
    s.from = to_double("sweep.from", need("from"));
    s.to = to_double("sweep.to", need("to"));
    s.steps = to_int("sweep.steps", need("steps"));
    c.sweep = s;
  }
  c.validate();
  return c;
}

}  // namespace

RunConfig parse_config(const std::string& ini_text) {
  pt::ptree tree;
  std::istringstream in(ini_text);
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw UsageError(std::string("config: ") + e.what());
  }
  return from_tree(tree);
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

KeyValues to_key_values(const RunConfig& c) {
  KeyValues kv;
  kv.emplace_back("crystal.name", c.crystal);
  if (c.sellmeier_set) kv.emplace_back("crystal.sellmeier_set", *c.sellmeier_set);
  if (c.data_file) kv.emplace_back("crystal.data_file", *c.data_file);
  kv.emplace_back("pump.lambda0_um", num(c.pump.lambda0_um));
  kv.emplace_back("pump.tau_fs", num(c.pump.tau_fs));
  kv.emplace_back("setup.length_um", num(c.length_um));
  kv.emplace_back("setup.pm_type", phasematching::to_string(c.pm_type));
  if (c.cut_angle_deg) kv.emplace_back("setup.cut_angle_deg", num(*c.cut_angle_deg));
  kv.emplace_back("grid.axis", spectra::to_string(c.grid.axis));
  kv.emplace_back("grid.start", num(c.grid.start));
  kv.emplace_back("grid.stop", num(c.grid.stop));
  kv.emplace_back("grid.points", std::to_string(c.grid.points));
  kv.emplace_back("detection.lambda2_um", num(c.lambda2_um));
  kv.emplace_back("detection.mode", spectra::to_string(c.mode));
  if (c.output_path) kv.emplace_back("output.path", *c.output_path);
  kv.emplace_back("output.normalize", c.normalize ? "true" : "false");
  if (c.sweep) {
    kv.emplace_back("sweep.parameter", to_string(c.sweep->parameter));
    kv.emplace_back("sweep.from", num(c.sweep->from));
    kv.emplace_back("sweep.to", num(c.sweep->to));
    kv.emplace_back("sweep.steps", std::to_string(c.sweep->steps));
  }
  return kv;
}

RunConfig parse_key_values(const KeyValues& entries) {
  pt::ptree tree;
  for (const auto& [key, value] : entries) {
    const auto dot = key.find('.');
    if (dot == std::string::npos || dot == 0 || dot + 1 == key.size()) {
      throw UsageError("config key '" + key + "' is not of the form section.key");
    }
    const pt::ptree::path_type section(key.substr(0, dot), '/');
    if (!tree.get_child_optional(section)) tree.add_child(section, pt::ptree{});
    auto& node = tree.get_child(section);
    const pt::ptree::path_type leaf(key.substr(dot + 1), '/');
    if (node.get_child_optional(leaf)) throw UsageError("duplicate config key '" + key + "'");
    node.put(leaf, value);
  }
  return from_tree(tree);
}

std::string to_ini(const RunConfig& config) {
  std::string out;
  std::string current;
  for (const auto& [key, value] : to_key_values(config)) {
    const auto dot = key.find('.');
    const auto section = key.substr(0, dot);
    if (section != current) {
      if (!current.empty()) out += '\n';
      out += "[" + section + "]\n";
      current = section;
    }
    out += key.substr(dot + 1) + " = " + value + "\n";
  }
  return out;
}

RunConfig from_metadata(const spectra::Metadata& metadata) {
  KeyValues kv;
  const std::string prefix = kMetadataPrefix;
  for (const auto& [k, v] : metadata) {
    if (k.rfind(prefix, 0) == 0) kv.emplace_back(k.substr(prefix.size()), v);
  }
  if (kv.empty()) throw UsageError("metadata carries no config entries");
  return parse_key_values(kv);
}

spectra::SpectralGrid parse_grid_spec(const std::string& text) {
  std::vector<std::string> parts;
  std::string part;
  std::istringstream in(text);
  while (std::getline(in, part, ':')) parts.push_back(part);
  spectra::SpectralGrid g;
  std::size_t first = 0;
  if (parts.size() == 4) {
    g.axis = spectra::parse_axis(parts[0]);
    first = 1;
  } else if (parts.size() != 3) {
    throw UsageError("grid spec '" + text + "' must be start:stop:points or axis:start:stop:points");
  }
  g.start = to_double("grid start", parts[first]);
  g.stop = to_double("grid stop", parts[first + 1]);
  g.points = to_int("grid points", parts[first + 2]);
  g.validate();
  return g;
}

}  // namespace spdc::config
