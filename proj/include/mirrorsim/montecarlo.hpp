#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

#include "mirrorsim/closed_form.hpp"
#include "mirrorsim/decoherence.hpp"

namespace mirrorsim::mc {

class InsufficientDataError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// mt19937_64 driven generator with splitmix64-mixed seeding. Substreams for
/// (seed, stream) pairs are independent, so runs can be evaluated in any
/// order or in parallel while staying bit-reproducible.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : Rng(seed, 0) {}
  Rng(std::uint64_t seed, std::uint64_t stream);

  /// 53-bit uniform in [0, 1).
  double uniform();
  /// Standard normal via Box-Muller; pairs are cached.
  double normal();
  /// Exponential with the given rate (> 0).
  double exponential(double rate);
  /// Poisson by inversion; intended for small means (mu <~ 30).
  int poisson(double mean);

 private:
  std::mt19937_64 engine_;
  double cached_normal_ = 0.0;
  bool has_cached_ = false;
};

enum class Detector { D1, D2 };

struct DetectionEvent {
  std::int64_t run_index = 0;
  double theta_leak = 0.0;     // phase at which the photon left the cavity
  Detector detector = Detector::D1;
  double phase_setting = 0.0;  // interferometer phase for this run
};

struct AttenuationSpec {
  DecoherenceModel model;
  double omega_m = 0.0;  // rad / s
};

struct McConfig {
  double kappa = 1.0;
  double nbar = 0.0;
  std::int64_t n_runs = 0;
  std::uint64_t seed = 1;
  double mean_photons = 0.1;         // Poisson mean per pulse
  double leak_rate_per_theta = 0.0;  // total cavity decay, eps N / (2 pi)
  double absorbed_fraction = 0.0;    // share of decays that are losses, not clicks
  double interferometer_phase = 0.0; // used when phase_scan is empty
  std::vector<double> phase_scan;    // per-run settings, cycled by run index
  std::optional<AttenuationSpec> decoherence;
};

struct RunCounters {
  std::int64_t runs = 0;
  std::int64_t no_photon = 0;
  std::int64_t multi_photon = 0;  // flagged and discarded
  std::int64_t absorbed = 0;
  std::int64_t detected = 0;
};

/// Thermal coherent amplitude: Re and Im independently N(0, nbar/2).
Complex sample_thermal_beta(double nbar, Rng& rng);

/// P(click at D1) given the mirror amplitude and leak phase:
/// 1/2 (1 + V cos(arg + phase)) with V twice the attenuated coherence modulus.
double click_probability(const McConfig& config, Complex beta,
                         double theta_leak, double phase_setting);

/// One run of the protocol. Draw order (part of the reproducibility
/// contract): photon count, mirror amplitude, leak phase, absorption,
/// detector. Returns an event only for detected photons.
std::optional<DetectionEvent> simulate_run(const McConfig& config,
                                           std::int64_t run_index, Rng& rng,
                                           RunCounters& counters);

/// All runs, each on its own substream derived from (seed, run_index).
std::vector<DetectionEvent> run_experiment(const McConfig& config,
                                           RunCounters& counters);

struct VisibilityEstimate {
  double visibility = 0.0;
  double std_error = 0.0;
};

/// Fringe fit over events with theta_leak in [theta_lo, theta_hi]: bins the
/// D1 fraction by phase setting and fits a + b cos(phase) + c sin(phase) by
/// generalized least squares with binomial weights. Needs at least three
/// distinct settings with events.
VisibilityEstimate estimate_visibility(const std::vector<DetectionEvent>& events,
                                       double theta_lo, double theta_hi,
                                       const std::vector<double>& phase_scan);

struct ThermalAverage {
  Complex mean;
  double std_error = 0.0;  // sqrt((var Re + var Im) / n)
};

/// Monte-Carlo average of the coherent-state off-diagonal element over
/// thermally sampled beta.
ThermalAverage thermal_average_check(double kappa, double nbar, double theta,
                                     std::int64_t n_samples, Rng& rng);

}  // namespace mirrorsim::mc
