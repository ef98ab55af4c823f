#include "mirrorsim/feasibility.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "mirrorsim/decoherence.hpp"

namespace mirrorsim {

namespace {

void require(bool ok, const char* message) {
  if (!ok) throw std::invalid_argument(message);
}

constexpr double kTwoPi = 2.0 * std::numbers::pi;

}  // namespace

void GasParams::validate() const {
  require(std::isfinite(density) && density >= 0.0, "gas density must be non-negative");
  require(std::isfinite(temperature) && temperature >= 0.0,
          "gas temperature must be non-negative");
  require(std::isfinite(molecule_mass) && molecule_mass > 0.0,
          "gas molecule mass must be positive");
  require(std::isfinite(area) && area >= 0.0, "exposed area must be non-negative");
}

double kappa_squared_condition(double n_roundtrips, double length, double mass,
                               double wavelength) {
  require(n_roundtrips > 0.0 && length > 0.0 && mass > 0.0 && wavelength > 0.0,
          "all coupling-condition inputs must be positive");
  return 2.0 * constants.hbar * n_roundtrips * n_roundtrips * n_roundtrips *
         length /
         (std::numbers::pi * constants.c * mass * wavelength * wavelength);
}

double photon_survival(double loss_per_reflection, double transmission,
                       double n_roundtrips) {
  require(loss_per_reflection >= 0.0 && loss_per_reflection < 1.0 &&
              transmission >= 0.0 && transmission < 1.0,
          "losses must lie in [0, 1)");
  require(n_roundtrips >= 0.0, "roundtrip number must be non-negative");
  const double eps = 2.0 * (loss_per_reflection + transmission);
  return std::exp(-eps * n_roundtrips);
}

double stability_requirement(double wavelength, double n_roundtrips) {
  require(wavelength > 0.0 && n_roundtrips > 0.0,
          "wavelength and roundtrip number must be positive");
  return wavelength / (20.0 * n_roundtrips);
}

double revival_leak_fraction(double kappa, double nbar) {
  require(kappa >= 0.0, "kappa must be non-negative");
  require(nbar >= 0.0, "nbar must be non-negative");
  if (nbar == 0.0 || kappa == 0.0) return 1.0;  // ground-state regime
  return std::min(1.0, 1.0 / (std::numbers::pi * kappa * std::sqrt(nbar)));
}

double count_rate(const EnvironmentParams& env, double survival,
                  double leak_fraction) {
  env.validate();
  require(survival >= 0.0 && survival <= 1.0, "survival must lie in [0, 1]");
  require(leak_fraction >= 0.0 && leak_fraction <= 1.0,
          "leak fraction must lie in [0, 1]");
  return env.repetition_rate * env.mean_photons_per_pulse * survival *
         leak_fraction * env.detection_efficiency * 3600.0;
}

double two_photon_ratio(double mu) {
  require(std::isfinite(mu) && mu >= 0.0, "mu must be non-negative");
  if (mu == 0.0) return 0.0;
  const double p_ge1 = -std::expm1(-mu);
  const double p_ge2 = p_ge1 - mu * std::exp(-mu);
  return p_ge2 / p_ge1;
}

double gas_collision_rate(double density, double gas_temperature,
                          double molecule_mass, double area) {
  GasParams gas{density, gas_temperature, molecule_mass, area};
  gas.validate();
  const double vbar = std::sqrt(8.0 * constants.k_B * gas_temperature /
                                (std::numbers::pi * molecule_mass));
  return density * vbar * area / 4.0;
}

double gas_collision_rate(const GasParams& gas) {
  return gas_collision_rate(gas.density, gas.temperature, gas.molecule_mass,
                            gas.area);
}

double cooling_speedup(double nbar) {
  require(nbar >= 0.0, "nbar must be non-negative");
  return std::sqrt(nbar);
}

FeasibilityReport full_report(const FeasibilityInputs& inputs) {
  inputs.cavity.validate();
  inputs.env.validate();
  inputs.gas.validate();

  FeasibilityReport report;
  report.omega_m_implied =
      implied_omega_m(inputs.n_roundtrips, inputs.cavity.length);

  const MirrorParams mirror{inputs.mirror_mass, report.omega_m_implied,
                            inputs.quality_factor};
  const CouplingDerived coupling =
      derive_coupling(inputs.cavity, mirror, inputs.env.temperature);
  report.kappa = coupling.kappa;
  report.nbar = coupling.nbar;

  report.kappa_sq_ratio =
      kappa_squared_condition(inputs.n_roundtrips, inputs.cavity.length,
                              inputs.mirror_mass, inputs.cavity.wavelength);
  report.survival_fraction =
      photon_survival(inputs.cavity.loss_per_reflection,
                      inputs.cavity.transmission, inputs.n_roundtrips);
  report.stability_bound =
      stability_requirement(inputs.cavity.wavelength, inputs.n_roundtrips);
  report.revival_leak_fraction = revival_leak_fraction(report.kappa, report.nbar);

  report.repetition_rate_used = inputs.env.repetition_rate > 0.0
                                    ? inputs.env.repetition_rate
                                    : report.omega_m_implied / kTwoPi;
  EnvironmentParams env = inputs.env;
  env.repetition_rate = report.repetition_rate_used;
  report.counts_per_hour =
      count_rate(env, report.survival_fraction, report.revival_leak_fraction);
  report.implied_rate_for_100_per_hour =
      report.counts_per_hour > 0.0
          ? report.repetition_rate_used * 100.0 / report.counts_per_hour
          : std::numeric_limits<double>::infinity();

  report.two_photon_ratio = two_photon_ratio(env.mean_photons_per_pulse);
  report.gas_collision_rate = gas_collision_rate(inputs.gas);
  report.cooling_speedup = cooling_speedup(report.nbar);
  report.quality_margin = quality_condition(
      inputs.quality_factor, inputs.env.temperature, report.omega_m_implied);
  return report;
}

}  // namespace mirrorsim
