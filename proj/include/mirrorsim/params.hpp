#pragma once

#include <stdexcept>

namespace mirrorsim {

/// CODATA 2018 values. SI units appear only in this module and in the
/// feasibility / decoherence estimators; the dynamics core works in the
/// dimensionless phase theta = omega_m * t.
struct PhysicalConstants {
  double hbar = 1.054571817e-34;  // J s
  double c = 299792458.0;         // m / s
  double k_B = 1.380649e-23;      // J / K
};

inline constexpr PhysicalConstants constants{};

struct MirrorParams {
  double mass = 0.0;            // kg
  double omega_m = 0.0;         // rad / s
  double quality_factor = 0.0;  // dimensionless

  double gamma_m() const { return omega_m / quality_factor; }
  void validate() const;
};

struct CavityParams {
  double length = 0.0;              // m
  double wavelength = 0.0;          // m
  double loss_per_reflection = 0.0; // per mirror, dimensionless
  double transmission = 0.0;        // per mirror, dimensionless

  void validate() const;
};

struct EnvironmentParams {
  double temperature = 0.0;            // K
  double detection_efficiency = 1.0;   // in [0, 1]
  double mean_photons_per_pulse = 0.0; // Poisson mean per run
  double repetition_rate = 0.0;        // Hz

  void validate() const;
};

/// Dimensionless quantities derived from the cavity and mirror parameters.
struct CouplingDerived {
  double omega_c = 0.0;      // cavity frequency, rad / s
  double g = 0.0;            // optomechanical coupling, rad / s
  double kappa = 0.0;        // g / omega_m
  double n_roundtrips = 0.0; // photon roundtrips per mirror period
  double nbar = 0.0;         // thermal occupation at the supplied temperature
  double x_zp = 0.0;         // zero-point position width, m
};

/// Mean thermal phonon number 1/(exp(hbar*omega_m/(k_B*T)) - 1); 0 at T = 0.
double thermal_occupation(double temperature, double omega_m);

/// omega_c = 2*pi*c/lambda, g = (omega_c/L)*sqrt(hbar/(2*M*omega_m)),
/// kappa = g/omega_m, N = pi*c/(L*omega_m), x_zp = sqrt(hbar/(2*M*omega_m)).
/// N is left non-integer.
CouplingDerived derive_coupling(const CavityParams& cavity,
                                const MirrorParams& mirror,
                                double temperature = 0.0);

/// Mirror frequency implied by the roundtrip closure 2*N*L/c = 2*pi/omega_m.
double implied_omega_m(double n_roundtrips, double length);

}  // namespace mirrorsim
