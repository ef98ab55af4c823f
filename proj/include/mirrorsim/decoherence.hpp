#pragma once

#include "mirrorsim/closed_form.hpp"

namespace mirrorsim {

/// How the branch separation entering the dephasing rate is chosen:
/// `fixed` uses the constant coherent-state size sqrt(hbar/(M omega_m));
/// `time_dependent` follows the actual separation kappa |1 - e^{-i theta}|
/// in units of sqrt(2 hbar / (M omega_m)).
enum class SeparationMode { fixed, time_dependent };

struct DecoherenceModel {
  double gamma_m = 0.0;      // mechanical damping rate, rad / s
  double temperature = 0.0;  // K
  double mass = 0.0;         // kg
  SeparationMode separation_mode = SeparationMode::fixed;
};

/// Ohmic-bath dephasing rate gamma_m k_B T M (dx)^2 / hbar^2 between mirror
/// positions separated by dx.
double decoherence_rate(const DecoherenceModel& model, double delta_x);

/// Q hbar omega_m / (k_B T); the revival survives decoherence when >= 1.
/// In the classical limit k_B T >> hbar omega_m this is Q / nbar.
double quality_condition(double quality_factor, double temperature,
                         double omega_m);

/// exp(-Lambda(theta)) with Lambda = int_0^theta gamma_D(dx(t)) / omega_m dt.
/// In time_dependent mode the integral is taken in closed form,
/// int |1 - e^{-i t}|^2 dt = 2 theta - 2 sin theta.
double attenuation_factor(const DecoherenceModel& model, double kappa,
                          double omega_m, double theta);

/// Attenuation hook for visibility_curve.
AttenuationFn make_attenuation(const DecoherenceModel& model, double kappa,
                               double omega_m);

}  // namespace mirrorsim
