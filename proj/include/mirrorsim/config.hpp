#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include "mirrorsim/feasibility.hpp"
#include "mirrorsim/montecarlo.hpp"
#include "mirrorsim/params.hpp"

namespace mirrorsim {

class ConfigError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class DecoherenceSetting { off, fixed, time_dependent };

/// Flat key=value run configuration. One pair per line, '#' comments.
/// Defaults are the reference experiment: 5 cm cavity, 630 nm light,
/// 5e-12 kg mirror, 5.6e6 roundtrips, Q = 1e5, 60 uK, 0.1 photons per pulse.
/// The roundtrip number is the defining input; omega_m follows from the
/// closure 2 N L / c = 2 pi / omega_m.
struct RunConfig {
  double cavity_length_m = 0.05;
  double cavity_wavelength_m = 630e-9;
  double cavity_loss_per_reflection = 3e-7;
  double cavity_transmission = 1e-7;
  double cavity_roundtrips = 5.6e6;

  double mirror_mass_kg = 5e-12;
  double mirror_quality_factor = 1e5;

  double env_temperature_k = 60e-6;
  double env_detection_efficiency = 0.7;
  double env_mean_photons_per_pulse = 0.1;
  double env_repetition_rate_hz = 0.0;  // 0 = one pulse per mirror period

  double gas_density_per_m3 = 1e8;
  double gas_temperature_k = 4.0;
  double gas_molecule_mass_kg = 6.6464731e-27;
  double gas_area_m2 = 6e-10;

  std::uint64_t mc_seed = 1;
  std::int64_t mc_n_runs = 100000;
  double mc_kappa_override = -1.0;      // < 0: use the derived kappa
  double mc_nbar_override = -1.0;       // < 0: use nbar(env temperature)
  double mc_leak_rate_override = -1.0;  // < 0: use eps N / (2 pi)
  double mc_absorbed_fraction = 0.75;
  double mc_interferometer_phase_rad = 0.0;
  int mc_phase_scan_points = 8;  // < 2 disables the scan
  DecoherenceSetting mc_decoherence = DecoherenceSetting::off;

  static RunConfig from_file(const std::string& path);

  /// Applies one "key=value" pair; unknown keys and malformed values throw
  /// ConfigError.
  void apply(std::string_view key_value);
  /// Parses a whole config text (used by from_file).
  void apply_text(std::string_view text);

  /// Canonical serialization; parsing it back reproduces the config exactly.
  std::string to_key_values() const;

  // Derived builders.
  double omega_m() const;
  CavityParams cavity() const;
  MirrorParams mirror() const;
  EnvironmentParams env() const;
  GasParams gas() const;
  CouplingDerived coupling() const;
  FeasibilityInputs feasibility_inputs() const;
  mc::McConfig mc_config() const;

  bool operator==(const RunConfig&) const = default;
};

}  // namespace mirrorsim
