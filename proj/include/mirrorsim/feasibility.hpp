#pragma once

#include "mirrorsim/params.hpp"

namespace mirrorsim {

/// Residual-gas environment around the oscillator.
struct GasParams {
  double density = 1e8;                 // molecules / m^3
  double temperature = 4.0;             // K
  double molecule_mass = 6.6464731e-27; // kg (helium-4)
  double area = 6e-10;                  // exposed surface, m^2

  void validate() const;
};

/// Aggregate of every quantitative experimental requirement.
struct FeasibilityReport {
  double kappa_sq_ratio = 0.0;        // 2 hbar N^3 L / (pi c M lambda^2)
  double omega_m_implied = 0.0;       // rad/s, from 2 N L / c = 2 pi / omega_m
  double kappa = 0.0;
  double nbar = 0.0;
  double survival_fraction = 0.0;     // photons left after one period
  double stability_bound = 0.0;       // m, lambda / (20 N)
  double revival_leak_fraction = 0.0; // share of survivors exiting in the window
  double repetition_rate_used = 0.0;  // Hz
  double counts_per_hour = 0.0;
  double implied_rate_for_100_per_hour = 0.0;  // Hz
  double two_photon_ratio = 0.0;
  double gas_collision_rate = 0.0;    // /s
  double cooling_speedup = 0.0;       // sqrt(nbar)
  double quality_margin = 0.0;        // Q hbar omega_m / (k_B T)
};

/// Left-hand side of the coupling condition kappa^2 >~ 1 rewritten in terms
/// of roundtrips: 2 hbar N^3 L / (pi c M lambda^2).
double kappa_squared_condition(double n_roundtrips, double length, double mass,
                               double wavelength);

/// exp(-eps N) with per-roundtrip loss eps = 2 (loss_per_reflection + transmission).
double photon_survival(double loss_per_reflection, double transmission,
                       double n_roundtrips);

/// Interferometer path-length stability requirement lambda / (20 N), in m.
double stability_requirement(double wavelength, double n_roundtrips);

/// Fraction of surviving photons leaking out within the revival window,
/// 1/(pi kappa sqrt(nbar)), capped at 1; the cap also covers nbar = 0.
double revival_leak_fraction(double kappa, double nbar);

/// Detected clicks per hour:
/// repetition_rate * mu * survival * leak_fraction * eta * 3600.
double count_rate(const EnvironmentParams& env, double survival,
                  double leak_fraction);

/// Poisson nuisance ratio P(n >= 2) / P(n >= 1) for pulse mean mu.
double two_photon_ratio(double mu);

/// Kinetic-theory molecular flux onto the oscillator:
/// density * vbar * area / 4 with vbar = sqrt(8 k_B T / (pi m)).
double gas_collision_rate(double density, double gas_temperature,
                          double molecule_mass, double area);
double gas_collision_rate(const GasParams& gas);

/// Measurement-time speedup from cooling to the ground state: sqrt(nbar).
double cooling_speedup(double nbar);

struct FeasibilityInputs {
  CavityParams cavity;
  double mirror_mass = 0.0;      // kg
  double quality_factor = 0.0;
  double n_roundtrips = 0.0;
  EnvironmentParams env;         // repetition_rate 0 means one pulse per period
  GasParams gas;
};

FeasibilityReport full_report(const FeasibilityInputs& inputs);

}  // namespace mirrorsim
