#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "spdc/error.hpp"
#include "spdc/phasematching.hpp"

using namespace spdc;
using namespace spdc::phasematching;
using spdc::testing::type1;
using spdc::testing::type2;

namespace {
double w(double lambda) { return wavelength_to_frequency(lambda); }
}  // namespace

TEST_SUITE("phasematching") {

TEST_CASE("degenerate angles") {
  // mpmath root of the same Sellmeier set: 42.904452024520, 68.845112724622 deg.
  CHECK(rad_to_deg(type1().cut_angle_rad) == doctest::Approx(42.904452024520).epsilon(1e-11));
  CHECK(rad_to_deg(type2().cut_angle_rad) == doctest::Approx(68.845112724622).epsilon(1e-11));
  CHECK(std::abs(rad_to_deg(type1().cut_angle_rad) - 42.904) < 0.5);
  CHECK(std::abs(rad_to_deg(type2().cut_angle_rad) - 68.845) < 0.5);

  const auto s1 = solve_degenerate_angle(type1());
  const auto s2 = solve_degenerate_angle(type2());
  CHECK(std::abs(s1.residual) < 1e-10);
  CHECK(std::abs(s2.residual) < 1e-10);
  CHECK(s1.warnings.empty());
}

TEST_CASE("angle solver is idempotent") {
  auto s = type2();
  const double first = solve_degenerate_angle(s).angle_rad;
  AngleSolverOptions narrow = default_angle_options();
  narrow.lo_rad = first - 1e-3;
  narrow.hi_rad = first + 1e-3;
  s.cut_angle_rad = first;
  CHECK(std::abs(solve_degenerate_angle(s, narrow).angle_rad - first) < 1e-10);
  CHECK(std::abs(solve_degenerate_angle(s).angle_rad - first) < 1e-10);
}

TEST_CASE("no phase matching is reported") {
  auto s = type2();
  AngleSolverOptions window = default_angle_options();
  window.lo_rad = deg_to_rad(10.0);
  window.hi_rad = deg_to_rad(30.0);
  CHECK_THROWS_AS(solve_degenerate_angle(s, window), NoPhaseMatchingError);
}

TEST_CASE("central mismatches") {
  const double half = type1().pump.omega0() / 2;
  CHECK(central_mismatch_type1(type1(), type1().cut_angle_rad) == mismatch_type1(type1(), half, half));
  CHECK(std::abs(central_mismatch_type1(type1(), type1().cut_angle_rad)) < 1e-10);
  CHECK(central_mismatch_type1(type1(), deg_to_rad(42.0)) > 0.0);
  CHECK(central_mismatch_type1(type1(), deg_to_rad(44.0)) < 0.0);

  const double phi2 = type2().cut_angle_rad;
  CHECK(spdc::testing::rel_diff(central_mismatch_type2(type2(), 1.1),
                                mismatch_12(Setup{type2().crystal, 1e4, 1.1, PhaseMatchingType::TypeII, type2().pump}, half, half)) < 1e-12);
  CHECK(std::abs(central_mismatch_type2(type2(), phi2)) < 1e-10);
  double prev = central_mismatch_type2(type2(), deg_to_rad(60.0));
  for (double deg = 60.1; deg <= 80.0; deg += 0.1) {
    const double d = central_mismatch_type2(type2(), deg_to_rad(deg));
    CHECK(d < prev);
    prev = d;
  }
}

TEST_CASE("all mismatches vanish at their degenerate point") {
  const double half = type1().pump.omega0() / 2;
  CHECK(std::abs(mismatch_type1(type1(), half, half)) < 1e-10);
  CHECK(std::abs(mismatch_12(type2(), half, half)) < 1e-10);
  CHECK(std::abs(mismatch_21(type2(), half, half)) < 1e-10);
}

TEST_CASE("type-I mismatch: monotone in lambda1 with one zero at lambda2 = 0.9") {
  const double w2 = w(0.9);
  double prev = mismatch_type1(type1(), w(0.7), w2);
  int sign_changes = 0;
  for (int i = 1; i < 1000; ++i) {
    const double l1 = 0.7 + 0.3 * i / 999.0;
    const double d = mismatch_type1(type1(), w(l1), w2);
    CHECK(d < prev);
    if ((d > 0) != (prev > 0)) ++sign_changes;
    prev = d;
  }
  CHECK(sign_changes == 1);
  // Bisection oracle in mpmath: 0.704115754541 um.
  const auto r = solve_zero_mismatch_wavelength(type1(), MismatchKind::TypeI, 0.9, {0.65, 1.0});
  CHECK(r.lambda1_um == doctest::Approx(0.704115754541).epsilon(1e-9));
  CHECK(r.warnings.empty());
}

TEST_CASE("type-I zero at the degenerate wavelength") {
  const double l = 2 * type1().pump.lambda0_um;
  const auto r = solve_zero_mismatch_wavelength(type1(), MismatchKind::TypeI, l, {0.7, 0.9});
  CHECK(r.lambda1_um == doctest::Approx(l).epsilon(1e-8));
}

TEST_CASE("type-II zeros at lambda2 = 0.9 are distinct") {
  // Oracle: dense-grid bisection in mpmath.
  const auto r12 = solve_zero_mismatch_wavelength(type2(), MismatchKind::Delta12, 0.9, {0.5, 1.2});
  const auto r21 = solve_zero_mismatch_wavelength(type2(), MismatchKind::Delta21, 0.9, {0.5, 1.2});
  CHECK(r12.lambda1_um == doctest::Approx(0.601145085087).epsilon(1e-9));
  CHECK(r21.lambda1_um == doctest::Approx(0.761471822100).epsilon(1e-9));
  CHECK(std::abs(r12.lambda1_um - r21.lambda1_um) > 0.1);
}

TEST_CASE("transposed roots are consistent") {
  // Delta12(l1, a) = 0 at l1 = r  <=>  Delta21(a, r) = 0, i.e. solving Delta21 for
  // lambda1 at lambda2 = r returns a.
  const double a = 0.82;
  const auto r = solve_zero_mismatch_wavelength(type2(), MismatchKind::Delta12, a, {0.6, 1.0});
  const auto back = solve_zero_mismatch_wavelength(type2(), MismatchKind::Delta21, r.lambda1_um, {0.6, 1.0});
  CHECK(back.lambda1_um == doctest::Approx(a).epsilon(1e-8));
}

TEST_CASE("regression values") {
  CHECK(mismatch_21(type2(), w(0.8), w(0.9)) == doctest::Approx(-0.0722376217673).epsilon(1e-9));
  CHECK(mismatch_12(type2(), w(0.8), w(0.9)) == doctest::Approx(-0.189752936287).epsilon(1e-9));
}

TEST_CASE("symmetry identities on random pairs") {
  spdc::testing::FrequencyPairs pairs;
  for (int i = 0; i < 10000; ++i) {
    const auto [a, b] = pairs.next();
    CHECK(mismatch_21(type2(), a, b) == mismatch_12(type2(), b, a));
    CHECK(mismatch_type1(type1(), a, b) == mismatch_type1(type1(), b, a));
  }
  const double x = w(0.81);
  CHECK(mismatch_12(type2(), x, x) == mismatch_21(type2(), x, x));
}

TEST_CASE("type misuse and range errors") {
  CHECK_THROWS_AS(mismatch_12(type1(), 2.3, 2.3), UsageError);
  CHECK_THROWS_AS(mismatch_type1(type2(), 2.3, 2.3), UsageError);
  CHECK_THROWS_AS(mismatch_12(type2(), w(5.0), w(0.8)), RangeError);
  CHECK_THROWS_AS(solve_zero_mismatch_wavelength(type2(), MismatchKind::TypeI, 0.9, {0.6, 1.0}), UsageError);
  CHECK_THROWS_AS(solve_zero_mismatch_wavelength(type2(), MismatchKind::Delta12, 0.9, {0.7, 0.75}), NoRootError);
}

TEST_CASE("setup validation") {
  auto s = type2();
  s.length_um = 0;
  CHECK_THROWS_AS(s.validate(), UsageError);
  s = type2();
  s.cut_angle_rad = 0;
  CHECK_THROWS_AS(s.validate(), UsageError);
  s = type2();
  s.pump.lambda0_um = 2.5;  // 2*lambda0 outside the range
  CHECK_THROWS_AS(s.validate(), RangeError);
  CHECK(parse_pm_type("I") == PhaseMatchingType::TypeI);
  CHECK_THROWS_AS(parse_pm_type("III"), UsageError);
}

}
