#include "mirrorsim/montecarlo.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

namespace mirrorsim::mc {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

}  // namespace

Rng::Rng(std::uint64_t seed, std::uint64_t stream)
    : engine_(splitmix64(splitmix64(seed) ^ splitmix64(~stream))) {}

double Rng::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::normal() {
  if (has_cached_) {
    has_cached_ = false;
    return cached_normal_;
  }
  const double radius = std::sqrt(-2.0 * std::log1p(-uniform()));
  const double angle = 2.0 * std::numbers::pi * uniform();
  cached_normal_ = radius * std::sin(angle);
  has_cached_ = true;
  return radius * std::cos(angle);
}

double Rng::exponential(double rate) {
  if (!(rate > 0.0)) throw std::invalid_argument("exponential rate must be positive");
  return -std::log1p(-uniform()) / rate;
}

int Rng::poisson(double mean) {
  if (!(mean >= 0.0)) throw std::invalid_argument("poisson mean must be non-negative");
  if (mean == 0.0) return 0;
  const double floor = std::exp(-mean);
  int count = -1;
  double product = 1.0;
  do {
    product *= uniform();
    ++count;
  } while (product > floor);
  return count;
}

Complex sample_thermal_beta(double nbar, Rng& rng) {
  if (!(nbar >= 0.0)) throw std::invalid_argument("nbar must be non-negative");
  if (nbar == 0.0) return Complex(0.0, 0.0);
  const double sigma = std::sqrt(0.5 * nbar);
  const double re = sigma * rng.normal();
  const double im = sigma * rng.normal();
  return Complex(re, im);
}

double click_probability(const McConfig& config, Complex beta,
                         double theta_leak, double phase_setting) {
  const OffDiagonal od =
      off_diagonal_coherent(config.kappa, beta, theta_leak);
  double attenuation = 1.0;
  if (config.decoherence) {
    attenuation = attenuation_factor(config.decoherence->model, config.kappa,
                                     config.decoherence->omega_m, theta_leak);
  }
  const double visibility = od.visibility() * attenuation;
  if (visibility == 0.0) return 0.5;
  const double p = 0.5 * (1.0 + visibility * std::cos(od.phase() + phase_setting));
  return std::clamp(p, 0.0, 1.0);
}

std::optional<DetectionEvent> simulate_run(const McConfig& config,
                                           std::int64_t run_index, Rng& rng,
                                           RunCounters& counters) {
  const int photons = rng.poisson(config.mean_photons);
  if (photons == 0) {
    ++counters.no_photon;
    return std::nullopt;
  }
  if (photons >= 2) {
    ++counters.multi_photon;
    return std::nullopt;
  }

  const Complex beta = sample_thermal_beta(config.nbar, rng);
  if (!(config.leak_rate_per_theta > 0.0)) {
    ++counters.absorbed;
    return std::nullopt;
  }
  const double theta_leak = rng.exponential(config.leak_rate_per_theta);
  if (rng.uniform() < config.absorbed_fraction) {
    ++counters.absorbed;
    return std::nullopt;
  }

  const double phase_setting =
      config.phase_scan.empty()
          ? config.interferometer_phase
          : config.phase_scan[static_cast<std::size_t>(run_index) %
                              config.phase_scan.size()];
  const double p_d1 = click_probability(config, beta, theta_leak, phase_setting);
  const Detector detector = rng.uniform() < p_d1 ? Detector::D1 : Detector::D2;
  ++counters.detected;
  return DetectionEvent{run_index, theta_leak, detector, phase_setting};
}

std::vector<DetectionEvent> run_experiment(const McConfig& config,
                                           RunCounters& counters) {
  if (config.n_runs <= 0) throw std::invalid_argument("n_runs must be positive");
  std::vector<DetectionEvent> events;
  counters.runs = config.n_runs;
  for (std::int64_t run = 0; run < config.n_runs; ++run) {
    Rng rng(config.seed, static_cast<std::uint64_t>(run));
    if (auto event = simulate_run(config, run, rng, counters))
      events.push_back(*event);
  }
  return events;
}

VisibilityEstimate estimate_visibility(const std::vector<DetectionEvent>& events,
                                       double theta_lo, double theta_hi,
                                       const std::vector<double>& phase_scan) {
  const auto in_scan = [&phase_scan](double phase) {
    if (phase_scan.empty()) return true;
    for (double scan : phase_scan)
      if (std::abs(scan - phase) < 1e-12) return true;
    return false;
  };

  struct Bin {
    std::int64_t total = 0;
    std::int64_t d1 = 0;
  };
  std::map<double, Bin> bins;
  for (const auto& event : events) {
    if (event.theta_leak < theta_lo || event.theta_leak > theta_hi) continue;
    if (!in_scan(event.phase_setting)) continue;
    auto& bin = bins[event.phase_setting];
    ++bin.total;
    if (event.detector == Detector::D1) ++bin.d1;
  }
  if (bins.empty())
    throw InsufficientDataError("no events inside the requested theta window");
  if (bins.size() < 3)
    throw InsufficientDataError(
        "fringe fit needs at least three distinct phase settings with events");

  // Generalized least squares for p(phi) = a + b cos phi + c sin phi with
  // binomial weights; the variance estimate uses the add-one smoothed rate
  // so empty-fraction bins keep a finite weight.
  Eigen::Matrix3d normal = Eigen::Matrix3d::Zero();
  Eigen::Vector3d rhs = Eigen::Vector3d::Zero();
  for (const auto& [phase, bin] : bins) {
    const double n = static_cast<double>(bin.total);
    const double p_hat = bin.d1 / n;
    const double p_smooth = (bin.d1 + 1.0) / (n + 2.0);
    const double variance = p_smooth * (1.0 - p_smooth) / n;
    const Eigen::Vector3d x(1.0, std::cos(phase), std::sin(phase));
    normal += x * x.transpose() / variance;
    rhs += x * p_hat / variance;
  }
  const Eigen::Matrix3d covariance = normal.inverse();
  const Eigen::Vector3d coeff = covariance * rhs;

  const double b = coeff(1);
  const double c = coeff(2);
  const double amplitude = std::hypot(b, c);
  VisibilityEstimate estimate;
  estimate.visibility = 2.0 * amplitude;
  if (amplitude > 1e-300) {
    const Eigen::Vector2d jacobian(2.0 * b / amplitude, 2.0 * c / amplitude);
    const Eigen::Matrix2d block = covariance.bottomRightCorner<2, 2>();
    estimate.std_error = std::sqrt(jacobian.dot(block * jacobian));
  } else {
    estimate.std_error =
        2.0 * std::sqrt(std::max(covariance(1, 1), covariance(2, 2)));
  }
  return estimate;
}

ThermalAverage thermal_average_check(double kappa, double nbar, double theta,
                                     std::int64_t n_samples, Rng& rng) {
  if (n_samples <= 0) throw std::invalid_argument("n_samples must be positive");
  Complex sum = 0.0;
  double sum_sq = 0.0;  // accumulated |value|^2 for the variance
  for (std::int64_t i = 0; i < n_samples; ++i) {
    const Complex beta = sample_thermal_beta(nbar, rng);
    const Complex value = off_diagonal_coherent(kappa, beta, theta).value;
    sum += value;
    sum_sq += std::norm(value);
  }
  const double n = static_cast<double>(n_samples);
  ThermalAverage result;
  result.mean = sum / n;
  const double variance = std::max(0.0, sum_sq / n - std::norm(result.mean));
  result.std_error = std::sqrt(variance / n);
  return result;
}

}  // namespace mirrorsim::mc
