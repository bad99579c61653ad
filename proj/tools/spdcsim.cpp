// spdcsim: biphoton coincidence spectra and walk-off peak analysis.
//
//   spdcsim solve-angle      --config configs/type2_two_peaks.ini
//   spdcsim spectrum         --config configs/type2_two_peaks.ini --out two_peaks.csv
//   spdcsim peaks            --config configs/type2_two_peaks.ini
//   spdcsim sweep            --config configs/type2_two_peaks.ini --param tau_fs --from 50 --to 186 --steps 2
//   spdcsim dispersion-table --grid 0.38:0.82:45

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "spdc/commands.hpp"
#include "spdc/config.hpp"
#include "spdc/error.hpp"

namespace {

struct Overrides {
  std::optional<std::string> config_path;
  std::optional<std::string> out;
  std::optional<double> lambda2;
  std::optional<double> tau_fs;
  std::optional<double> length_um;
  std::optional<double> lambda0_um;
  std::optional<double> angle_deg;
  std::optional<std::string> pm_type;
  std::optional<std::string> mode;
  std::optional<std::string> grid;
  std::optional<std::string> crystal;
  std::optional<std::string> sellmeier_set;
  std::optional<std::string> crystal_data;
  std::optional<bool> normalize;
  std::optional<std::string> sweep_param;
  std::optional<double> sweep_from;
  std::optional<double> sweep_to;
  std::optional<int> sweep_steps;
};

void add_common(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--config", o.config_path, "ini configuration file");
  cmd->add_option("--out", o.out, "output file (default: stdout)");
  cmd->add_option("--lambda2", o.lambda2, "fixed partner wavelength, um");
  cmd->add_option("--tau-fs", o.tau_fs, "pump pulse duration (intensity FWHM), fs");
  cmd->add_option("--length-um", o.length_um, "crystal length, um");
  cmd->add_option("--lambda0", o.lambda0_um, "pump central wavelength, um");
  cmd->add_option("--angle-deg", o.angle_deg, "explicit cut angle, degrees");
  cmd->add_option("--pm-type", o.pm_type, "phase-matching type: I or II");
  cmd->add_option("--mode", o.mode, "detection mode: unpolarized, ordinary, extraordinary");
  cmd->add_option("--grid", o.grid, "grid as start:stop:points or axis:start:stop:points");
  cmd->add_option("--crystal", o.crystal, "crystal name");
  cmd->add_option("--sellmeier-set", o.sellmeier_set, "Sellmeier set id (default: crystal default)");
  cmd->add_option("--crystal-data", o.crystal_data, "crystal data file");
  cmd->add_option("--normalize", o.normalize, "peak-normalize spectra (true/false)");
}

spdc::config::RunConfig resolve(const Overrides& o) {
  using namespace spdc;
  config::RunConfig c = o.config_path ? config::load_config(*o.config_path) : config::RunConfig{};
  if (o.out) c.output_path = *o.out;
  if (o.lambda2) c.lambda2_um = *o.lambda2;
  if (o.tau_fs) c.pump.tau_fs = *o.tau_fs;
  if (o.length_um) c.length_um = *o.length_um;
  if (o.lambda0_um) c.pump.lambda0_um = *o.lambda0_um;
  if (o.angle_deg) c.cut_angle_deg = *o.angle_deg;
  if (o.pm_type) c.pm_type = phasematching::parse_pm_type(*o.pm_type);
  if (o.mode) c.mode = spectra::parse_mode(*o.mode);
  if (o.grid) c.grid = config::parse_grid_spec(*o.grid);
  if (o.crystal) c.crystal = *o.crystal;
  if (o.sellmeier_set) c.sellmeier_set = *o.sellmeier_set;
  if (o.crystal_data) c.data_file = *o.crystal_data;
  if (o.normalize) c.normalize = *o.normalize;
  if (o.sweep_param || o.sweep_from || o.sweep_to || o.sweep_steps) {
    config::SweepSpec s = c.sweep.value_or(config::SweepSpec{});
    if (o.sweep_param) s.parameter = config::parse_sweep_parameter(*o.sweep_param);
    if (o.sweep_from) s.from = *o.sweep_from;
    if (o.sweep_to) s.to = *o.sweep_to;
    if (o.sweep_steps) s.steps = *o.sweep_steps;
    c.sweep = s;
  }
  c.validate();
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"SPDC biphoton coincidence spectra and walk-off peak analysis"};
  app.require_subcommand(1);
  Overrides overrides;
  for (const char* name : {"solve-angle", "spectrum", "peaks", "sweep", "dispersion-table"}) {
    add_common(app.add_subcommand(name), overrides);
  }
  auto* sweep = app.get_subcommand("sweep");
  sweep->add_option("--param", overrides.sweep_param, "lambda2_um, tau_fs, length_um or cut_angle_deg");
  sweep->add_option("--from", overrides.sweep_from, "first sweep value");
  sweep->add_option("--to", overrides.sweep_to, "last sweep value");
  sweep->add_option("--steps", overrides.sweep_steps, "number of sweep points (>= 2)");
  app.get_subcommand("solve-angle")->description("phase-matching cut angle for the degenerate point");
  app.get_subcommand("spectrum")->description("coincidence spectrum at a fixed partner wavelength (CSV)");
  app.get_subcommand("peaks")->description("analytic vs numeric peak report (JSON); exit 3 if inconsistent");
  sweep->description("peak-report summary over a parameter range (CSV)");
  app.get_subcommand("dispersion-table")->description("indices and group velocities over a wavelength grid (CSV)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : spdc::cli::kUsage;
  }

  spdc::config::RunConfig config;
  try {
    config = resolve(overrides);
  } catch (const spdc::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return spdc::cli::kUsage;
  }
  return spdc::cli::run(app.get_subcommands().front()->get_name(), config, std::cout, std::cerr);
}
