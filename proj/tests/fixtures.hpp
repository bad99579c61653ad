#pragma once

#include <cmath>
#include <random>

#include "spdc/constants.hpp"
#include "spdc/crystal_data.hpp"
#include "spdc/phasematching.hpp"

namespace spdc::testing {

inline const dispersion::CrystalModel& liio3() {
  static const auto crystal = dispersion::load_crystal("LiIO3");
  return crystal;
}

inline phasematching::Setup setup_for(phasematching::PhaseMatchingType type, double tau_fs = 50.0,
                                      double length_um = 1.0e4) {
  return phasematching::make_setup(liio3(), PumpPulse{0.3975, tau_fs}, length_um, type);
}

inline const phasematching::Setup& type1() {
  static const auto s = setup_for(phasematching::PhaseMatchingType::TypeI);
  return s;
}

inline const phasematching::Setup& type2() {
  static const auto s = setup_for(phasematching::PhaseMatchingType::TypeII);
  return s;
}

inline double rel_diff(double a, double b) {
  return std::abs(a - b) / std::max(std::abs(a), std::abs(b));
}

// Frequencies whose wavelengths stay well inside the validity range and whose sum
// stays above the pump-side lower bound.
struct FrequencyPairs {
  std::mt19937_64 rng{20240611};
  std::uniform_real_distribution<double> lambda{0.62, 1.1};
  std::pair<double, double> next() {
    return {wavelength_to_frequency(lambda(rng)), wavelength_to_frequency(lambda(rng))};
  }
};

}  // namespace spdc::testing
