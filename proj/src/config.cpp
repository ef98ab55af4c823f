#include "mirrorsim/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

namespace mirrorsim {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::string_view trim(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = text.find_last_not_of(" \t\r");
  return text.substr(first, last - first + 1);
}

std::string format_double(double value) {
  char buffer[48];
  const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, result.ptr);
}

double parse_double(std::string_view key, std::string_view text) {
  double value = 0.0;
  const auto result = std::from_chars(text.data(), text.data() + text.size(), value);
  if (result.ec != std::errc{} || result.ptr != text.data() + text.size())
    throw ConfigError("invalid numeric value for '" + std::string(key) + "': " +
                      std::string(text));
  return value;
}

template <typename Int>
Int parse_int(std::string_view key, std::string_view text) {
  Int value = 0;
  const auto result = std::from_chars(text.data(), text.data() + text.size(), value);
  if (result.ec != std::errc{} || result.ptr != text.data() + text.size())
    throw ConfigError("invalid integer value for '" + std::string(key) + "': " +
                      std::string(text));
  return value;
}

const char* decoherence_name(DecoherenceSetting setting) {
  switch (setting) {
    case DecoherenceSetting::off: return "off";
    case DecoherenceSetting::fixed: return "fixed";
    case DecoherenceSetting::time_dependent: return "time_dependent";
  }
  return "off";
}

DecoherenceSetting parse_decoherence(std::string_view key, std::string_view text) {
  if (text == "off") return DecoherenceSetting::off;
  if (text == "fixed") return DecoherenceSetting::fixed;
  if (text == "time_dependent") return DecoherenceSetting::time_dependent;
  throw ConfigError("invalid value for '" + std::string(key) +
                    "': expected off, fixed or time_dependent");
}

struct DoubleKey {
  const char* name;
  double RunConfig::*member;
};

constexpr DoubleKey kDoubleKeys[] = {
    {"cavity.length_m", &RunConfig::cavity_length_m},
    {"cavity.wavelength_m", &RunConfig::cavity_wavelength_m},
    {"cavity.loss_per_reflection", &RunConfig::cavity_loss_per_reflection},
    {"cavity.transmission", &RunConfig::cavity_transmission},
    {"cavity.roundtrips", &RunConfig::cavity_roundtrips},
    {"mirror.mass_kg", &RunConfig::mirror_mass_kg},
    {"mirror.quality_factor", &RunConfig::mirror_quality_factor},
    {"env.temperature_K", &RunConfig::env_temperature_k},
    {"env.detection_efficiency", &RunConfig::env_detection_efficiency},
    {"env.mean_photons_per_pulse", &RunConfig::env_mean_photons_per_pulse},
    {"env.repetition_rate_hz", &RunConfig::env_repetition_rate_hz},
    {"gas.density_per_m3", &RunConfig::gas_density_per_m3},
    {"gas.temperature_K", &RunConfig::gas_temperature_k},
    {"gas.molecule_mass_kg", &RunConfig::gas_molecule_mass_kg},
    {"gas.area_m2", &RunConfig::gas_area_m2},
    {"mc.kappa_override", &RunConfig::mc_kappa_override},
    {"mc.nbar_override", &RunConfig::mc_nbar_override},
    {"mc.leak_rate_override", &RunConfig::mc_leak_rate_override},
    {"mc.absorbed_fraction", &RunConfig::mc_absorbed_fraction},
    {"mc.interferometer_phase_rad", &RunConfig::mc_interferometer_phase_rad},
};

}  // namespace

RunConfig RunConfig::from_file(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw ConfigError("cannot open config file: " + path);
  std::ostringstream text;
  text << file.rdbuf();
  RunConfig config;
  config.apply_text(text.str());
  return config;
}

void RunConfig::apply_text(std::string_view text) {
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t end = std::min(text.find('\n', start), text.size());
    const std::string_view line = trim(text.substr(start, end - start));
    if (!line.empty() && line.front() != '#') apply(line);
    if (end == text.size()) break;
    start = end + 1;
  }
}

void RunConfig::apply(std::string_view key_value) {
  const auto separator = key_value.find('=');
  if (separator == std::string_view::npos)
    throw ConfigError("expected key=value, got: " + std::string(key_value));
  const std::string_view key = trim(key_value.substr(0, separator));
  const std::string_view value = trim(key_value.substr(separator + 1));
  if (key.empty()) throw ConfigError("empty key in: " + std::string(key_value));

  for (const auto& entry : kDoubleKeys) {
    if (key == entry.name) {
      this->*entry.member = parse_double(key, value);
      return;
    }
  }
  if (key == "mc.seed") {
    mc_seed = parse_int<std::uint64_t>(key, value);
    return;
  }
  if (key == "mc.n_runs") {
    mc_n_runs = parse_int<std::int64_t>(key, value);
    return;
  }
  if (key == "mc.phase_scan_points") {
    mc_phase_scan_points = parse_int<int>(key, value);
    return;
  }
  if (key == "mc.decoherence") {
    mc_decoherence = parse_decoherence(key, value);
    return;
  }
  throw ConfigError("unknown config key: " + std::string(key));
}

std::string RunConfig::to_key_values() const {
  std::ostringstream out;
  for (const auto& entry : kDoubleKeys)
    out << entry.name << "=" << format_double(this->*entry.member) << "\n";
  out << "mc.seed=" << mc_seed << "\n";
  out << "mc.n_runs=" << mc_n_runs << "\n";
  out << "mc.phase_scan_points=" << mc_phase_scan_points << "\n";
  out << "mc.decoherence=" << decoherence_name(mc_decoherence) << "\n";
  return out.str();
}

double RunConfig::omega_m() const {
  return implied_omega_m(cavity_roundtrips, cavity_length_m);
}

CavityParams RunConfig::cavity() const {
  return {cavity_length_m, cavity_wavelength_m, cavity_loss_per_reflection,
          cavity_transmission};
}

MirrorParams RunConfig::mirror() const {
  return {mirror_mass_kg, omega_m(), mirror_quality_factor};
}

EnvironmentParams RunConfig::env() const {
  return {env_temperature_k, env_detection_efficiency,
          env_mean_photons_per_pulse, env_repetition_rate_hz};
}

GasParams RunConfig::gas() const {
  return {gas_density_per_m3, gas_temperature_k, gas_molecule_mass_kg,
          gas_area_m2};
}

CouplingDerived RunConfig::coupling() const {
  return derive_coupling(cavity(), mirror(), env_temperature_k);
}

FeasibilityInputs RunConfig::feasibility_inputs() const {
  return {cavity(), mirror_mass_kg, mirror_quality_factor, cavity_roundtrips,
          env(), gas()};
}

mc::McConfig RunConfig::mc_config() const {
  mc::McConfig config;
  const CouplingDerived derived = coupling();
  config.kappa = mc_kappa_override >= 0.0 ? mc_kappa_override : derived.kappa;
  config.nbar = mc_nbar_override >= 0.0 ? mc_nbar_override : derived.nbar;
  config.n_runs = mc_n_runs;
  config.seed = mc_seed;
  config.mean_photons = env_mean_photons_per_pulse;
  if (mc_leak_rate_override >= 0.0) {
    config.leak_rate_per_theta = mc_leak_rate_override;
  } else {
    const double eps =
        2.0 * (cavity_loss_per_reflection + cavity_transmission);
    config.leak_rate_per_theta = eps * cavity_roundtrips / kTwoPi;
  }
  config.absorbed_fraction = mc_absorbed_fraction;
  config.interferometer_phase = mc_interferometer_phase_rad;
  if (mc_phase_scan_points >= 2) {
    config.phase_scan.reserve(mc_phase_scan_points);
    for (int i = 0; i < mc_phase_scan_points; ++i)
      config.phase_scan.push_back(kTwoPi * i / mc_phase_scan_points);
  }
  if (mc_decoherence != DecoherenceSetting::off) {
    DecoherenceModel model;
    model.gamma_m = omega_m() / mirror_quality_factor;
    model.temperature = env_temperature_k;
    model.mass = mirror_mass_kg;
    model.separation_mode = mc_decoherence == DecoherenceSetting::fixed
                                ? SeparationMode::fixed
                                : SeparationMode::time_dependent;
    config.decoherence = mc::AttenuationSpec{model, omega_m()};
  }
  return config;
}

}  // namespace mirrorsim
