// Acceptance checks: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>
#include <json.hpp>

#include "spdc/commands.hpp"
#include "spdc/constants.hpp"
#include "spdc/crystal_data.hpp"
#include "spdc/peaks.hpp"
#include "spdc/spectra.hpp"

using namespace spdc;
using phasematching::PhaseMatchingType;
using spectra::Axis;
using spectra::DetectionMode;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

const spectra::SpectralGrid kGrid{Axis::Wavelength, 0.75, 0.85, 4001};

phasematching::Setup setup(PhaseMatchingType type, double tau_fs = 50.0) {
  static const auto crystal = dispersion::load_crystal("LiIO3");
  return phasematching::make_setup(crystal, PumpPulse{0.3975, tau_fs}, 1.0e4, type);
}

bool within_rel(double value, double target, double tol) {
  return std::abs(value - target) <= tol * std::abs(target);
}

Outcome angles() {
  double got[2];
  int i = 0;
  for (auto type : {PhaseMatchingType::TypeI, PhaseMatchingType::TypeII}) {
    config::RunConfig c;
    c.pm_type = type;
    std::ostringstream out;
    std::ostringstream err;
    if (cli::run("solve-angle", c, out, err) != cli::kOk) return {false, "solve-angle failed"};
    got[i++] = nlohmann::json::parse(out.str())["angle_deg"].get<double>();
  }
  const bool ok = std::abs(got[0] - 42.904) <= 0.5 && std::abs(got[1] - 68.845) <= 0.5 &&
                  std::abs(got[0] - 42.904452) <= 1e-3 && std::abs(got[1] - 68.845113) <= 1e-3;
  return {ok, fmt::format("type I {:.5f} deg, type II {:.5f} deg", got[0], got[1])};
}

Outcome walk_off() {
  const auto p = peaks::walk_off_constants(setup(PhaseMatchingType::TypeII));
  const double c = kSpeedOfLight;
  const double far_coef = -p.a_e / p.a_o;
  const double near_coef = -p.a_o / p.a_e;
  const bool ok = within_rel(p.v_p / c, 0.4986, 0.01) && within_rel(p.v_o / c, 0.522, 0.01) &&
                  within_rel(p.v_e / c, 0.5628, 0.01) && within_rel(p.a_o, 0.09, 0.10) &&
                  within_rel(p.a_e, 0.2287, 0.10) && std::abs(far_coef + 2.54) <= 0.15 &&
                  std::abs(near_coef + 0.39) <= 0.03;
  return {ok, fmt::format("v/c = {:.4f} {:.4f} {:.4f}, A_o = {:.4f}, A_e = {:.4f}, "
                          "coefficients {:.3f} {:.3f}",
                          p.v_p / c, p.v_o / c, p.v_e / c, p.a_o, p.a_e, far_coef, near_coef)};
}

Outcome short_pulse() {
  const auto p = peaks::walk_off_constants(setup(PhaseMatchingType::TypeII));
  const auto check = peaks::short_pulse_check(p, 1.0e4, 50.0);
  return {within_rel(check.threshold_o_ps, 3.0, 0.10),
          fmt::format("L A_o / c = {:.4f} ps", check.threshold_o_ps)};
}

Outcome double_peak() {
  const auto s = setup(PhaseMatchingType::TypeII);
  const auto r = peaks::build_report(s, 0.79, kGrid);
  if (r.numeric.size() != 2) return {false, fmt::format("{} peaks detected", r.numeric.size())};
  const auto lin = peaks::peak_positions_wavelength(r.walk_off, 0.79, s.pump.lambda0_um);
  const auto widths = peaks::peak_widths(r.walk_off, s.length_um, s.pump.lambda0_um);
  // numeric peaks are in ascending wavelength: near (0.797) then far (0.808)
  const auto& near = r.numeric[0];
  const auto& far = r.numeric[1];
  const double dn = std::abs(near.position - lin.near) / widths.near.lambda_um;
  const double df = std::abs(far.position - lin.far) / widths.far.lambda_um;
  const bool ok = dn <= 1.0 && df <= 1.0 && near.fwhm < far.fwhm && near.height >= far.height;
  return {ok, fmt::format("near {:.6f} um ({:.2f} widths off), far {:.6f} um ({:.2f} widths off), "
                          "fwhm {:.3g} < {:.3g}, height {:.3f} >= {:.3f}",
                          near.position, dn, far.position, df, near.fwhm, far.fwhm, near.height,
                          far.height)};
}

Outcome merging() {
  const auto r = peaks::build_report(setup(PhaseMatchingType::TypeII), 0.795, kGrid);
  if (r.numeric.size() != 1) return {false, fmt::format("{} peaks detected", r.numeric.size())};
  const double off = std::abs(r.numeric[0].position - 0.795);
  return {off <= kGrid.step(), fmt::format("one peak at {:.6f} um (grid step {:.1e})",
                                           r.numeric[0].position, kGrid.step())};
}

Outcome type1_single() {
  const auto r = peaks::build_report(setup(PhaseMatchingType::TypeI), 0.794, kGrid);
  return {r.numeric.size() == 1, fmt::format("{} peak(s) detected", r.numeric.size())};
}

Outcome pulse_duration() {
  const double lambda2 = 0.7925;
  double numeric[2];
  double analytic[2];
  int i = 0;
  for (double tau : {50.0, 186.0}) {
    const auto r = peaks::build_report(setup(PhaseMatchingType::TypeII, tau), lambda2, kGrid);
    if (!r.ratio_numeric) return {false, fmt::format("no numeric ratio at tau = {} fs", tau)};
    numeric[i] = *r.ratio_numeric;
    analytic[i] = r.ratio_analytic;
    ++i;
  }
  const bool ok = numeric[1] > numeric[0] && within_rel(numeric[0], analytic[0], 0.15) &&
                  within_rel(numeric[1], analytic[1], 0.15);
  return {ok, fmt::format("lambda2 = {} um: 50 fs {:.4f} (model {:.4f}), 186 fs {:.4f} (model {:.4f})",
                          lambda2, numeric[0], analytic[0], numeric[1], analytic[1])};
}

Outcome decomposition() {
  const auto s = setup(PhaseMatchingType::TypeII);
  double worst = 0.0;
  for (double lambda2 : {0.78, 0.79, 0.795, 0.80}) {
    const auto u = spectra::conditional_spectrum(s, DetectionMode::Unpolarized, lambda2, kGrid);
    const auto o = spectra::conditional_spectrum(s, DetectionMode::SelectOrdinaryAtFixed, lambda2, kGrid);
    const auto e =
        spectra::conditional_spectrum(s, DetectionMode::SelectExtraordinaryAtFixed, lambda2, kGrid);
    for (std::size_t k = 0; k < u.size(); ++k) {
      const double sum = o.values[k] + e.values[k];
      if (u.values[k] > 0.0) worst = std::max(worst, std::abs(u.values[k] - sum) / u.values[k]);
    }
  }
  return {worst <= 1e-12, fmt::format("max relative deviation {:.2e}", worst)};
}

Outcome symmetry() {
  const auto s1 = setup(PhaseMatchingType::TypeI);
  const auto s2 = setup(PhaseMatchingType::TypeII);
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> lambda(0.62, 1.1);
  const auto rel = [](double a, double b) {
    const double m = std::max(std::abs(a), std::abs(b));
    return m == 0.0 ? 0.0 : std::abs(a - b) / m;
  };
  double worst = 0.0;
  bool exact = true;
  for (int i = 0; i < 10000; ++i) {
    const double a = wavelength_to_frequency(lambda(rng));
    const double b = wavelength_to_frequency(lambda(rng));
    exact = exact && phasematching::mismatch_21(s2, a, b) == phasematching::mismatch_12(s2, b, a);
    exact = exact && phasematching::mismatch_type1(s1, a, b) == phasematching::mismatch_type1(s1, b, a);
    worst = std::max(worst, rel(spectra::coincidence_density(s2, a, b),
                                spectra::coincidence_density(s2, b, a)));
    worst = std::max(worst, rel(spectra::coincidence_density(s1, a, b),
                                spectra::coincidence_density(s1, b, a)));
  }
  return {exact && worst <= 1e-12,
          fmt::format("10000 pairs, mismatch identities {}, max density asymmetry {:.2e}",
                      exact ? "exact" : "BROKEN", worst)};
}

Outcome self_consistency() {
  const auto p = peaks::walk_off_constants(setup(PhaseMatchingType::TypeII));
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> nu(-0.05, 0.05);
  std::uniform_real_distribution<double> tau(5.0, 500.0);
  double worst_product = 0.0;
  double worst_ratio = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double nu2 = nu(rng);
    const double t = tau(rng);
    const auto pos = peaks::peak_positions(p, nu2);
    worst_product = std::max(worst_product, std::abs(pos.far * pos.near - nu2 * nu2) / (nu2 * nu2));
    const auto h = peaks::peak_heights(p, nu2, t);
    worst_ratio = std::max(worst_ratio, std::abs(peaks::height_ratio(p, nu2, t) - h.near / h.far) /
                                            peaks::height_ratio(p, nu2, t));
  }
  double previous = INFINITY;
  bool decreasing = true;
  double last = 0.0;
  for (double t : {500.0, 200.0, 50.0, 10.0, 1.0, 0.1}) {
    last = peaks::min_detuning_and_ratio(p, 1.0e4, t).ratio;
    decreasing = decreasing && last <= previous && last >= 1.0;
    previous = last;
  }
  const bool ok = worst_product <= 1e-12 && worst_ratio <= 1e-12 && decreasing && last - 1.0 < 1e-9;
  return {ok, fmt::format("product {:.1e}, ratio identity {:.1e}, ratio_min(0.1 fs) - 1 = {:.1e}",
                          worst_product, worst_ratio, last - 1.0)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"phase-matching angles", angles},
      {"group velocities and walk-off", walk_off},
      {"short-pulse threshold", short_pulse},
      {"double peak at lambda2 = 0.79 um", double_peak},
      {"peak merging at lambda2 = 0.795 um", merging},
      {"type-I single peak", type1_single},
      {"pulse-duration behavior", pulse_duration},
      {"polarization-selective decomposition", decomposition},
      {"symmetry suite", symmetry},
      {"analytic self-consistency", self_consistency},
  };
  const auto start = std::chrono::steady_clock::now();
  int failed = 0;
  int n = 0;
  for (const auto& [name, check] : criteria) {
    ++n;
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::printf("%s criterion %d (%s): %s\n", o.pass ? "PASS" : "FAIL", n, name, o.detail.c_str());
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("%d/%d criteria passed in %.1f s\n", n - failed, n, secs);
  return failed == 0 ? 0 : 1;
}
