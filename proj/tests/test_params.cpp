#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "mirrorsim/feasibility.hpp"
#include "mirrorsim/params.hpp"

using namespace mirrorsim;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("derive_coupling reproduces the reference cavity numbers") {
  const CavityParams cavity{0.05, 630e-9, 3e-7, 1e-7};
  const MirrorParams mirror{5e-12, 2 * kPi * 535.0, 1e5};
  const CouplingDerived out = derive_coupling(cavity, mirror);

  CHECK(out.n_roundtrips == doctest::Approx(5.6035973457944e6).epsilon(1e-12));
  CHECK(out.x_zp == doctest::Approx(5.601073287017e-14).epsilon(1e-12));
  CHECK(out.omega_c == doctest::Approx(2 * kPi * constants.c / 630e-9).epsilon(1e-15));
  // kappa^2 close to one for this parameter set
  CHECK(out.kappa * out.kappa == doctest::Approx(1.0).epsilon(0.1));
  CHECK(out.kappa == doctest::Approx(0.9963860128485).epsilon(1e-12));
}

TEST_CASE("zero-point width at the round 500 Hz frequency") {
  const CavityParams cavity{0.05, 630e-9, 0, 0};
  const MirrorParams mirror{5e-12, 2 * kPi * 500.0, 1e5};
  const CouplingDerived out = derive_coupling(cavity, mirror);
  CHECK(out.x_zp == doctest::Approx(5.793795259085e-14).epsilon(1e-12));
  CHECK(out.x_zp > 3e-14);
  CHECK(out.x_zp < 3e-13);
}

TEST_CASE("derive_coupling validates its inputs") {
  const CavityParams cavity{0.05, 630e-9, 0, 0};
  const MirrorParams mirror{5e-12, 2 * kPi * 500.0, 1e5};
  CHECK_THROWS_AS(derive_coupling({-1.0, 630e-9, 0, 0}, mirror), std::invalid_argument);
  CHECK_THROWS_AS(derive_coupling({0.05, 0.0, 0, 0}, mirror), std::invalid_argument);
  CHECK_THROWS_AS(derive_coupling(cavity, {5e-12, -3.0, 1e5}), std::invalid_argument);
  CHECK_THROWS_AS(derive_coupling(cavity, {0.0, 2 * kPi * 500.0, 1e5}), std::invalid_argument);
  CHECK_THROWS_AS(derive_coupling({0.05, 630e-9, 1.5, 0}, mirror), std::invalid_argument);
}

TEST_CASE("thermal occupation values and limits") {
  const double omega = 2 * kPi * 500.0;
  CHECK(thermal_occupation(0.0, omega) == 0.0);
  CHECK(thermal_occupation(3e-3, omega) == doctest::Approx(1.250192148172e5).epsilon(1e-11));
  CHECK(thermal_occupation(60e-6, omega) == doctest::Approx(2499.89432966).epsilon(1e-11));
  CHECK_THROWS_AS(thermal_occupation(-1.0, omega), std::invalid_argument);
}

TEST_CASE("thermal occupation is monotone in T and classical above kT >> hbar omega") {
  const double omega = 2 * kPi * 500.0;
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> temp(1e-7, 1e-1);
  for (int i = 0; i < 200; ++i) {
    const double t1 = temp(rng);
    const double t2 = temp(rng);
    const double lo = std::min(t1, t2), hi = std::max(t1, t2);
    if (lo == hi) continue;
    CHECK(thermal_occupation(lo, omega) < thermal_occupation(hi, omega));
  }
  // classical limit within 1% once kT/(hbar omega) > 100
  for (double ratio : {150.0, 1e3, 1e6}) {
    const double temperature = ratio * constants.hbar * omega / constants.k_B;
    const double classical = constants.k_B * temperature / (constants.hbar * omega);
    CHECK(thermal_occupation(temperature, omega) ==
          doctest::Approx(classical).epsilon(0.01));
  }
}

TEST_CASE("kappa from g/omega_m equals the roundtrip form of the condition") {
  // With N from the closure 2NL/c = 2pi/omega_m the two kappa^2 expressions
  // are algebraically identical.
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    const double length = 0.005 + 0.3 * u(rng);
    const double wavelength = 400e-9 + 800e-9 * u(rng);
    const double mass = std::pow(10.0, -14.0 + 4.0 * u(rng));
    const double omega = 2 * kPi * (20.0 + 5000.0 * u(rng));
    const CouplingDerived out =
        derive_coupling({length, wavelength, 0, 0}, {mass, omega, 1e5});
    const double ratio =
        kappa_squared_condition(out.n_roundtrips, length, mass, wavelength);
    CHECK(out.kappa * out.kappa == doctest::Approx(ratio).epsilon(1e-12));
  }
}

TEST_CASE("x_zp definition closure") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 50; ++i) {
    const double mass = std::pow(10.0, -14.0 + 6.0 * u(rng));
    const double omega = 2 * kPi * (1.0 + 1e4 * u(rng));
    const CouplingDerived out =
        derive_coupling({0.05, 630e-9, 0, 0}, {mass, omega, 1e5});
    CHECK(out.x_zp * out.x_zp * 2.0 * mass * omega / constants.hbar ==
          doctest::Approx(1.0).epsilon(1e-14));
  }
}

TEST_CASE("implied omega_m closes the roundtrip relation") {
  const double omega = implied_omega_m(5.6e6, 0.05);
  CHECK(omega == doctest::Approx(2 * kPi * 535.343675).epsilon(1e-12));
  // closure: 2 N L / c = 2 pi / omega
  CHECK(2 * 5.6e6 * 0.05 / constants.c ==
        doctest::Approx(2 * kPi / omega).epsilon(1e-14));
}
