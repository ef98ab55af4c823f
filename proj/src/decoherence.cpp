#include "mirrorsim/decoherence.hpp"

#include <cmath>
#include <stdexcept>

#include "mirrorsim/params.hpp"

namespace mirrorsim {

namespace {

void check_model(const DecoherenceModel& model) {
  if (!(model.gamma_m >= 0.0) || !std::isfinite(model.gamma_m))
    throw std::invalid_argument("gamma_m must be non-negative");
  if (!(model.temperature >= 0.0) || !std::isfinite(model.temperature))
    throw std::invalid_argument("temperature must be non-negative");
  if (!(model.mass > 0.0) || !std::isfinite(model.mass))
    throw std::invalid_argument("mass must be positive");
}

}  // namespace

double decoherence_rate(const DecoherenceModel& model, double delta_x) {
  check_model(model);
  if (!(delta_x >= 0.0)) throw std::invalid_argument("delta_x must be non-negative");
  return model.gamma_m * constants.k_B * model.temperature * model.mass *
         delta_x * delta_x / (constants.hbar * constants.hbar);
}

double quality_condition(double quality_factor, double temperature,
                         double omega_m) {
  if (!(quality_factor > 0.0) || !(omega_m > 0.0))
    throw std::invalid_argument("quality factor and omega_m must be positive");
  if (!(temperature >= 0.0))
    throw std::invalid_argument("temperature must be non-negative");
  if (temperature == 0.0) return std::numeric_limits<double>::infinity();
  return quality_factor * constants.hbar * omega_m /
         (constants.k_B * temperature);
}

double attenuation_factor(const DecoherenceModel& model, double kappa,
                          double omega_m, double theta) {
  check_model(model);
  if (!(kappa >= 0.0)) throw std::invalid_argument("kappa must be non-negative");
  if (!(omega_m > 0.0)) throw std::invalid_argument("omega_m must be positive");
  if (!(theta >= 0.0)) throw std::invalid_argument("theta must be non-negative");

  double exponent = 0.0;
  if (model.separation_mode == SeparationMode::fixed) {
    const double dx = std::sqrt(constants.hbar / (model.mass * omega_m));
    exponent = decoherence_rate(model, dx) / omega_m * theta;
  } else {
    // dx(t)^2 = (2 hbar / M omega_m) kappa^2 |1 - e^{-i t}|^2 and
    // int_0^theta |1 - e^{-i t}|^2 dt = 2 theta - 2 sin theta.
    const double prefactor = 2.0 * model.gamma_m * constants.k_B *
                             model.temperature * kappa * kappa /
                             (constants.hbar * omega_m * omega_m);
    exponent = prefactor * (2.0 * theta - 2.0 * std::sin(theta));
  }
  return std::exp(-exponent);
}

AttenuationFn make_attenuation(const DecoherenceModel& model, double kappa,
                               double omega_m) {
  return [model, kappa, omega_m](double theta) {
    return attenuation_factor(model, kappa, omega_m, theta);
  };
}

}  // namespace mirrorsim
