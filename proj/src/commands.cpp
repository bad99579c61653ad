#include "spdc/commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <ostream>

#include <fmt/format.h>

#include "spdc/constants.hpp"
#include "spdc/crystal_data.hpp"
#include "spdc/error.hpp"
#include "spdc/io.hpp"

namespace spdc::cli {

using config::RunConfig;

namespace {

void emit(const RunConfig& config, std::ostream& out, const std::function<void(std::ostream&)>& write) {
  if (!config.output_path) {
    write(out);
    return;
  }
  std::ofstream file(*config.output_path, std::ios::binary);
  if (!file) throw UsageError("cannot write " + *config.output_path);
  write(file);
}

void report_warnings(std::ostream& err, const std::vector<std::string>& warnings) {
  for (const auto& w : warnings) err << "warning: " << w << '\n';
}

dispersion::CrystalModel crystal_for(const RunConfig& config) {
  std::optional<std::filesystem::path> file;
  if (config.data_file) file = *config.data_file;
  return dispersion::load_crystal(config.crystal, config.sellmeier_set, file);
}

void append_config(spectra::Metadata& metadata, const RunConfig& config) {
  for (const auto& [k, v] : config::to_key_values(config)) {
    metadata.emplace_back(config::kMetadataPrefix + k, v);
  }
}

std::string num(double v) { return io::format_number(v); }

}  // namespace

phasematching::Setup build_setup(const RunConfig& config) {
  config.validate();
  std::optional<double> angle;
  if (config.cut_angle_deg) angle = deg_to_rad(*config.cut_angle_deg);
  return phasematching::make_setup(crystal_for(config), config.pump, config.length_um,
                                   config.pm_type, angle);
}

int cmd_solve_angle(const RunConfig& config, std::ostream& out, std::ostream& err) {
  config.validate();
  phasematching::Setup setup{crystal_for(config), config.length_um, deg_to_rad(45.0),
                             config.pm_type, config.pump};
  setup.validate();
  const auto solution = phasematching::solve_degenerate_angle(setup);
  report_warnings(err, solution.warnings);
  nlohmann::ordered_json j;
  j["crystal"] = setup.crystal.name;
  j["sellmeier_set"] = setup.crystal.set_id;
  j["pm_type"] = phasematching::to_string(setup.type);
  j["lambda0_um"] = setup.pump.lambda0_um;
  j["angle_deg"] = rad_to_deg(solution.angle_rad);
  j["angle_rad"] = solution.angle_rad;
  j["residual_per_um"] = solution.residual;
  j["warnings"] = solution.warnings;
  emit(config, out, [&](std::ostream& o) { o << j.dump(2) << '\n'; });
  return kOk;
}

int cmd_spectrum(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const auto setup = build_setup(config);
  auto samples = spectra::conditional_spectrum(setup, config.mode, config.lambda2_um, config.grid,
                                               config.normalize);
  append_config(samples.metadata, config);
  report_warnings(err, samples.warnings);
  emit(config, out, [&](std::ostream& o) { io::write_csv(o, samples); });
  return kOk;
}

int cmd_peaks(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const auto setup = build_setup(config);
  const auto report = peaks::build_report(setup, config.lambda2_um, config.grid);
  report_warnings(err, report.warnings);
  emit(config, out, [&](std::ostream& o) { o << io::to_json(report).dump(2) << '\n'; });
  if (!report.consistent) {
    err << "error: numeric peaks disagree with the analytic walk-off model\n";
    return kInconsistent;
  }
  return kOk;
}

int cmd_sweep(const RunConfig& config, std::ostream& out, std::ostream& err) {
  config.validate();
  if (!config.sweep) throw UsageError("sweep needs a [sweep] section or --param/--from/--to/--steps");
  const auto& sweep = *config.sweep;
  std::string table =
      fmt::format("{},expected_peaks,detected_peaks,far_lambda_um,near_lambda_um,"
                  "far_numeric_um,near_numeric_um,far_width_um,near_width_um,far_height,"
                  "near_height,ratio_analytic,ratio_numeric,short_pulse_ok,consistent\n",
                  config::to_string(sweep.parameter));
  bool all_consistent = true;
  for (int i = 0; i < sweep.steps; ++i) {
    RunConfig point = config;
    const double value = sweep.value(i);
    switch (sweep.parameter) {
      case config::SweepParameter::Lambda2: point.lambda2_um = value; break;
      case config::SweepParameter::Tau: point.pump.tau_fs = value; break;
      case config::SweepParameter::Length: point.length_um = value; break;
      case config::SweepParameter::Angle: point.cut_angle_deg = value; break;
    }
    const auto setup = build_setup(point);
    const auto r = peaks::build_report(setup, point.lambda2_um, point.grid);
    for (const auto& w : r.warnings) err << fmt::format("warning [{}={}]: {}\n", config::to_string(sweep.parameter), num(value), w);
    all_consistent = all_consistent && r.consistent;

    // Numeric peaks ordered far-to-near by distance from the degenerate point.
    const double center = r.axis == spectra::Axis::Wavelength ? 2.0 * setup.pump.lambda0_um
                                                               : setup.pump.omega0() / 2.0;
    auto numeric = r.numeric;
    std::sort(numeric.begin(), numeric.end(), [&](const auto& a, const auto& b) {
      return std::abs(a.position - center) > std::abs(b.position - center);
    });
    std::string far_num;
    std::string near_num;
    if (numeric.size() == 2) {
      far_num = num(numeric[0].position);
      near_num = num(numeric[1].position);
    } else if (numeric.size() == 1) {
      near_num = num(numeric[0].position);
    }
    const auto& far = r.analytic[0];
    const auto& near = r.analytic[1];
    table += fmt::format("{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n", num(value),
                         r.expected_peak_count, r.numeric.size(), num(far.lambda1_um),
                         num(near.lambda1_um), far_num, near_num, num(far.width_lambda_um),
                         num(near.width_lambda_um), num(far.height), num(near.height),
                         num(r.ratio_analytic), r.ratio_numeric ? num(*r.ratio_numeric) : "",
                         r.short_pulse.ok ? "true" : "false", r.consistent ? "true" : "false");
  }
  emit(config, out, [&](std::ostream& o) { o << table; });
  return all_consistent ? kOk : kInconsistent;
}

int cmd_dispersion_table(const RunConfig& config, std::ostream& out, std::ostream& err) {
  config.validate();
  if (config.grid.axis != spectra::Axis::Wavelength) {
    throw UsageError("dispersion-table needs a wavelength grid");
  }
  const auto crystal = crystal_for(config);
  double angle = 0.0;
  if (config.cut_angle_deg) {
    angle = deg_to_rad(*config.cut_angle_deg);
  } else {
    phasematching::Setup setup{crystal, config.length_um, deg_to_rad(45.0), config.pm_type, config.pump};
    setup.validate();
    const auto solution = phasematching::solve_degenerate_angle(setup);
    report_warnings(err, solution.warnings);
    angle = solution.angle_rad;
  }
  namespace d = dispersion;
  std::string table = fmt::format("# crystal={}\n# sellmeier_set={}\n# angle_deg={}\n", crystal.name,
                                  crystal.set_id, num(rad_to_deg(angle)));
  table += "lambda_um,n_o,n_e,n_e_phi,vg_o_over_c,vg_e_over_c,vg_e_phi_over_c\n";
  for (double l : config.grid.positions()) {
    table += fmt::format(
        "{},{},{},{},{},{},{}\n", num(l), num(d::index_ordinary(crystal, l)),
        num(d::index_extraordinary_principal(crystal, l)),
        num(d::index_extraordinary_at_angle(crystal, l, angle)),
        num(d::group_velocity(crystal, d::Ordinary{}, l) / kSpeedOfLight),
        num(d::group_velocity(crystal, d::ExtraordinaryPrincipal{}, l) / kSpeedOfLight),
        num(d::group_velocity(crystal, d::ExtraordinaryAtAngle{angle}, l) / kSpeedOfLight));
  }
  emit(config, out, [&](std::ostream& o) { o << table; });
  return kOk;
}

int run(const std::string& command, const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    if (command == "solve-angle") return cmd_solve_angle(config, out, err);
    if (command == "spectrum") return cmd_spectrum(config, out, err);
    if (command == "peaks") return cmd_peaks(config, out, err);
    if (command == "sweep") return cmd_sweep(config, out, err);
    if (command == "dispersion-table") return cmd_dispersion_table(config, out, err);
    err << "error: unknown command '" << command << "'\n";
    return kUsage;
  } catch (const NoPhaseMatchingError& e) {
    err << "error: " << e.what() << '\n';
    return kSolverFailure;
  } catch (const SolverError& e) {
    err << "error: " << e.what() << '\n';
    return kSolverFailure;
  } catch (const NoRootError& e) {
    err << "error: " << e.what() << '\n';
    return kSolverFailure;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
}

}  // namespace spdc::cli
