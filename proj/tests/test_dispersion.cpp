#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fixtures.hpp"
#include "spdc/dispersion.hpp"
#include "spdc/error.hpp"

using namespace spdc;
using namespace spdc::dispersion;
using spdc::testing::liio3;
using spdc::testing::rel_diff;

TEST_SUITE("dispersion") {

TEST_CASE("ordinary index: positive, normal dispersion, reference values") {
  const auto& x = liio3();
  CHECK(index_ordinary(x, 1.0) > 1.0);
  // mpmath evaluation of the shipped coefficients.
  CHECK(index_ordinary(x, 0.795) == doctest::Approx(1.86787835259470).epsilon(1e-13));
  CHECK(index_ordinary(x, 0.3975) == doctest::Approx(1.94874968621430).epsilon(1e-13));
  CHECK(index_ordinary(x, 0.3975) > index_ordinary(x, 0.795));
}

TEST_CASE("extraordinary principal index") {
  const auto& x = liio3();
  CHECK(index_extraordinary_principal(x, 0.3975) == doctest::Approx(1.78575374636598).epsilon(1e-13));
  const double a = index_extraordinary_principal(x, 0.8);
  CHECK(std::abs(a - index_extraordinary_principal(x, 0.8 + 1e-9)) < 1e-8);
  for (double l = 0.35; l <= 3.9; l += 0.05) {
    CHECK(index_extraordinary_principal(x, l) < index_ordinary(x, l));
  }
}

TEST_CASE("out-of-range wavelength names the valid interval") {
  const auto& x = liio3();
  CHECK_THROWS_AS(index_ordinary(x, 0.2), RangeError);
  CHECK_THROWS_AS(index_extraordinary_principal(x, 5.0), RangeError);
  try {
    index_ordinary(x, 0.2);
  } catch (const RangeError& e) {
    CHECK(e.lower() == doctest::Approx(0.30));
    CHECK(e.upper() == doctest::Approx(4.00));
    CHECK(std::string(e.what()).find("[0.3, 4]") != std::string::npos);
  }
}

TEST_CASE("angle-dependent index limits and ordering") {
  const auto& x = liio3();
  for (double l : {0.3975, 0.795, 1.5}) {
    CHECK(index_extraordinary_at_angle(x, l, 0.0) == index_ordinary(x, l));
    CHECK(index_extraordinary_at_angle(x, l, std::numbers::pi / 2) == index_extraordinary_principal(x, l));
    // General formula near the limits agrees to 1e-14 relative.
    CHECK(rel_diff(index_extraordinary_at_angle(x, l, 1e-9), index_ordinary(x, l)) < 1e-14);
    double prev = index_extraordinary_at_angle(x, l, 0.0);
    for (int i = 1; i < 90; ++i) {
      const double n = index_extraordinary_at_angle(x, l, deg_to_rad(i));
      CHECK(n < prev);
      CHECK(n > index_extraordinary_principal(x, l));
      CHECK(n < index_ordinary(x, l));
      prev = n;
    }
  }
  CHECK_THROWS_AS(index_extraordinary_at_angle(x, 0.8, -0.1), UsageError);
  CHECK_THROWS_AS(index_extraordinary_at_angle(x, 0.8, 2.0), UsageError);
}

TEST_CASE("wave number and frequency conversion") {
  CHECK(wave_number(1.0, kSpeedOfLight * kTwoPi / 1.0) == doctest::Approx(kTwoPi).epsilon(1e-15));
  CHECK(wave_number(1.7, 2.0) == doctest::Approx(2.0 * wave_number(1.7, 1.0)).epsilon(1e-15));
  CHECK(wavelength_to_frequency(kTwoPi * kSpeedOfLight) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(wavelength_to_frequency(0.795) == doctest::Approx(2.36937304064007).epsilon(1e-13));
  for (double l = 0.3; l < 4.0; l += 0.137) {
    CHECK(rel_diff(frequency_to_wavelength(wavelength_to_frequency(l)), l) < 1e-12);
  }
  CHECK_THROWS_AS(wavelength_to_frequency(0.0), UsageError);
  CHECK_THROWS_AS(wave_number(1.5, -1.0), UsageError);
}

TEST_CASE("pump wave number at the type-II angle") {
  const auto& x = liio3();
  const double phi = 1.2015738909512836;  // 68.8451 deg
  const double k = wave_number(x, ExtraordinaryAtAngle{phi}, wavelength_to_frequency(0.3975));
  CHECK(k == doctest::Approx(28.5263013898777).epsilon(1e-11));
}

TEST_CASE("group velocities reproduce the walk-off anchors") {
  const auto& x = liio3();
  const ExtraordinaryAtAngle e{deg_to_rad(68.8451127246)};
  CHECK(group_velocity(x, e, 0.3975) / kSpeedOfLight == doctest::Approx(0.4986).epsilon(0.01));
  CHECK(group_velocity(x, Ordinary{}, 0.795) / kSpeedOfLight == doctest::Approx(0.522).epsilon(0.01));
  CHECK(group_velocity(x, e, 0.795) / kSpeedOfLight == doctest::Approx(0.5628).epsilon(0.01));
}

TEST_CASE("analytic and finite-difference group velocity agree") {
  const auto& x = liio3();
  const RayKind rays[] = {Ordinary{}, ExtraordinaryPrincipal{}, ExtraordinaryAtAngle{0.9}};
  for (const auto& ray : rays) {
    for (int i = 0; i < 100; ++i) {
      const double l = 0.32 + i * (3.9 - 0.32) / 99.0;
      const double analytic = group_velocity(x, ray, l);
      CHECK(rel_diff(analytic, group_velocity_fd(x, ray, l)) < 1e-6);
      CHECK(analytic < kSpeedOfLight);
      CHECK(analytic > 0.0);
    }
  }
  // The stencil itself must stay inside the range.
  CHECK_THROWS_AS(group_velocity_fd(x, Ordinary{}, 0.30), RangeError);
}

TEST_CASE("crystal data file parsing") {
  const std::string good = R"(
[crystal]
name = Test
default_set = a
[set.a]
form = pole_ir
ordinary = 3.0 0.05 0.03 0.01
extraordinary = 2.9 0.04 0.03 0.004
valid_range_um = 0.4 2.0
source = made up
[set.b]
form = pole_sum
ordinary = 1.0 1.3 0.03
extraordinary = 1.0 1.2 0.03
valid_range_um = 0.4 2.0
source = made up
)";
  const auto data = parse_crystal_data(good);
  CHECK(data.sets.size() == 2);
  CHECK(data.model().set_id == "a");
  CHECK(data.model(std::string("b")).ordinary.form() == SellmeierForm::PoleSum);
  CHECK_THROWS_AS(data.model(std::string("zzz")), UsageError);

  auto bad = good;
  bad.replace(bad.find("source = made up"), 16, "colour = blue");
  CHECK_THROWS_AS(parse_crystal_data(bad), UsageError);
  CHECK_THROWS_AS(parse_crystal_data("[set.x]\nform = pole_ir\n"), UsageError);
  CHECK_THROWS_AS(SellmeierSet(SellmeierForm::PoleIr, {1.0, 2.0}, {0.4, 2.0}), UsageError);
  CHECK_THROWS_AS(load_crystal("Unobtainium"), UsageError);
}

TEST_CASE("alternative LiIO3 set loads and stays negative uniaxial") {
  const auto x = load_crystal("LiIO3", std::string("twopole"));
  for (double l = 0.35; l <= 3.9; l += 0.1) {
    CHECK(index_extraordinary_principal(x, l) < index_ordinary(x, l));
  }
}

}
