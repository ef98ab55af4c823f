#include "mirrorsim/params.hpp"

#include <cmath>
#include <numbers>

namespace mirrorsim {

namespace {

void require(bool ok, const char* message) {
  if (!ok) throw std::invalid_argument(message);
}

bool positive(double x) { return std::isfinite(x) && x > 0.0; }

}  // namespace

void MirrorParams::validate() const {
  require(positive(mass), "mirror mass must be positive");
  require(positive(omega_m), "mirror omega_m must be positive");
  require(positive(quality_factor), "mirror quality factor must be positive");
}

void CavityParams::validate() const {
  require(positive(length), "cavity length must be positive");
  require(positive(wavelength), "cavity wavelength must be positive");
  require(wavelength < length, "wavelength must be small compared to the cavity length");
  require(loss_per_reflection >= 0.0 && loss_per_reflection < 1.0,
          "loss per reflection must lie in [0, 1)");
  require(transmission >= 0.0 && transmission < 1.0,
          "transmission must lie in [0, 1)");
}

void EnvironmentParams::validate() const {
  require(std::isfinite(temperature) && temperature >= 0.0,
          "temperature must be non-negative");
  require(detection_efficiency >= 0.0 && detection_efficiency <= 1.0,
          "detection efficiency must lie in [0, 1]");
  require(std::isfinite(mean_photons_per_pulse) && mean_photons_per_pulse >= 0.0,
          "mean photons per pulse must be non-negative");
  require(std::isfinite(repetition_rate) && repetition_rate >= 0.0,
          "repetition rate must be non-negative");
}

double thermal_occupation(double temperature, double omega_m) {
  require(std::isfinite(temperature) && temperature >= 0.0,
          "temperature must be non-negative");
  require(positive(omega_m), "omega_m must be positive");
  if (temperature == 0.0) return 0.0;
  const double x = constants.hbar * omega_m / (constants.k_B * temperature);
  return 1.0 / std::expm1(x);  // overflows to 0 for hbar*omega >> k_B T
}

CouplingDerived derive_coupling(const CavityParams& cavity,
                                const MirrorParams& mirror,
                                double temperature) {
  cavity.validate();
  mirror.validate();

  CouplingDerived out;
  out.omega_c = 2.0 * std::numbers::pi * constants.c / cavity.wavelength;
  out.x_zp = std::sqrt(constants.hbar / (2.0 * mirror.mass * mirror.omega_m));
  out.g = out.omega_c / cavity.length * out.x_zp;
  out.kappa = out.g / mirror.omega_m;
  out.n_roundtrips =
      std::numbers::pi * constants.c / (cavity.length * mirror.omega_m);
  out.nbar = thermal_occupation(temperature, mirror.omega_m);
  return out;
}

double implied_omega_m(double n_roundtrips, double length) {
  require(positive(n_roundtrips), "roundtrip number must be positive");
  require(positive(length), "cavity length must be positive");
  return std::numbers::pi * constants.c / (n_roundtrips * length);
}

}  // namespace mirrorsim
