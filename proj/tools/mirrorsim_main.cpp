// Command-line front end: visibility / fig2 / validate / feasibility /
// montecarlo subcommands over a flat key=value config.
//
// Exit codes: 0 success, 1 validation or tolerance failure, 2 bad config,
// 3 I/O error.

#include <CLI11.hpp>
#include <algorithm>
#include <charconv>
#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "mirrorsim/closed_form.hpp"
#include "mirrorsim/config.hpp"
#include "mirrorsim/decoherence.hpp"
#include "mirrorsim/feasibility.hpp"
#include "mirrorsim/fock.hpp"
#include "mirrorsim/montecarlo.hpp"
#include "mirrorsim/params.hpp"

namespace {

using namespace mirrorsim;

constexpr double kTwoPi = 2.0 * std::numbers::pi;

class IoError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SharedArgs {
  std::string config_path;
  std::vector<std::string> overrides;
  std::optional<std::uint64_t> seed;
};

void add_shared_options(CLI::App* cmd, SharedArgs& args) {
  cmd->add_option("--config", args.config_path, "key=value config file");
  cmd->add_option("--set", args.overrides,
                  "override one config key, e.g. --set mc.seed=7 (repeatable)");
  cmd->add_option("--seed", args.seed, "shorthand for --set mc.seed=<value>");
}

RunConfig load_config(const SharedArgs& args) {
  RunConfig config;
  if (!args.config_path.empty()) config = RunConfig::from_file(args.config_path);
  for (const auto& kv : args.overrides) config.apply(kv);
  if (args.seed) config.mc_seed = *args.seed;
  return config;
}

std::string format_double(double value) {
  char buffer[48];
  const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, result.ptr);
}

/// Writes to the given path, or to stdout when the path is empty.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);  // binary keeps LF endings everywhere
      if (!file_) throw IoError("cannot open output file: " + path);
    }
  }

  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

  void finish(const std::string& path) {
    if (file_.is_open()) {
      file_.flush();
      if (!file_) throw IoError("write failed: " + path);
    }
  }

 private:
  std::ofstream file_;
};

/// kappa and nbar as resolved by the mc.* override keys.
struct EffectiveDynamics {
  double kappa;
  double nbar;
  AttenuationFn attenuation;
};

EffectiveDynamics effective_dynamics(const RunConfig& config) {
  const mc::McConfig mc_cfg = config.mc_config();
  EffectiveDynamics out{mc_cfg.kappa, mc_cfg.nbar, {}};
  if (mc_cfg.decoherence) {
    out.attenuation = make_attenuation(mc_cfg.decoherence->model, mc_cfg.kappa,
                                       mc_cfg.decoherence->omega_m);
  }
  return out;
}

int cmd_visibility(const RunConfig& config, double theta_min, double theta_max,
                   int samples, const std::string& out_path) {
  if (samples < 2) throw std::invalid_argument("need at least 2 samples");
  if (!(theta_max > theta_min))
    throw std::invalid_argument("theta range must be non-empty");

  const EffectiveDynamics dyn = effective_dynamics(config);
  std::vector<double> grid;
  if (theta_min == 0.0 && std::abs(theta_max - kTwoPi) < 1e-12) {
    grid = revival_theta_grid(dyn.kappa, dyn.nbar, samples);
  } else {
    grid.reserve(samples + 1);
    for (int i = 0; i <= samples; ++i)
      grid.push_back(theta_min + (theta_max - theta_min) * i / samples);
  }
  const VisibilityCurve curve =
      visibility_curve(dyn.kappa, dyn.nbar, grid, dyn.attenuation);

  Output out(out_path);
  out.stream() << "theta,visibility,phase_rad\n";
  for (std::size_t i = 0; i < curve.thetas.size(); ++i) {
    out.stream() << format_double(curve.thetas[i]) << ','
                 << format_double(curve.visibility[i]) << ','
                 << format_double(curve.phase[i]) << '\n';
  }
  out.finish(out_path);
  return 0;
}

int cmd_fig2(const RunConfig& config, int samples, const std::string& out_path) {
  // The canonical two-temperature dataset: kappa = 1, 1 mK and 60 uK, no
  // decoherence, over one full period.
  const double omega = config.omega_m();
  const double kappa = 1.0;
  const double nbar_hot = thermal_occupation(1e-3, omega);
  const double nbar_cold = thermal_occupation(60e-6, omega);

  std::vector<double> grid = revival_theta_grid(kappa, nbar_hot, samples);
  {
    const std::vector<double> cold = revival_theta_grid(kappa, nbar_cold, samples);
    grid.insert(grid.end(), cold.begin(), cold.end());
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end(),
                           [](double a, double b) { return std::abs(a - b) < 1e-12; }),
               grid.end());
  }

  const VisibilityCurve hot = visibility_curve(kappa, nbar_hot, grid);
  const VisibilityCurve cold = visibility_curve(kappa, nbar_cold, grid);

  Output out(out_path);
  out.stream() << "theta,visibility_1mK,visibility_60uK\n";
  for (std::size_t i = 0; i < grid.size(); ++i) {
    out.stream() << format_double(grid[i]) << ','
                 << format_double(hot.visibility[i]) << ','
                 << format_double(cold.visibility[i]) << '\n';
  }
  out.finish(out_path);
  return 0;
}

int cmd_validate(const RunConfig& config, int points, double tolerance,
                 int n_max, double kappa_max) {
  if (points < 1) throw std::invalid_argument("need at least one point");
  if (!(tolerance > 0.0)) throw std::invalid_argument("tolerance must be positive");

  mc::Rng rng(config.mc_seed);
  double max_deviation = 0.0;
  double max_norm_drift = 0.0;
  double max_energy_drift = 0.0;

  for (int i = 0; i < points; ++i) {
    const double kappa = kappa_max * rng.uniform();
    const double radius = 2.0 * std::sqrt(rng.uniform());
    const double angle = kTwoPi * rng.uniform();
    const Complex beta = std::polar(radius, angle);
    const double theta = kTwoPi * rng.uniform();

    const fock::FockVector initial = fock::initial_superposition(beta, n_max);
    const double energy_before = fock::energy_expectation(initial, kappa);
    const fock::FockVector propagated = fock::propagate(initial, kappa, theta);

    const Complex oracle = fock::reduced_photon_offdiagonal(propagated);
    const Complex closed = off_diagonal_coherent(kappa, beta, theta).value;
    max_deviation = std::max(max_deviation, std::abs(oracle - closed));
    max_norm_drift =
        std::max(max_norm_drift, std::abs(propagated.norm() - 1.0));
    const double energy_after = fock::energy_expectation(propagated, kappa);
    max_energy_drift =
        std::max(max_energy_drift, std::abs(energy_after - energy_before) /
                                       std::max(1.0, std::abs(energy_before)));
  }

  std::cout << "points=" << points << " n_max=" << n_max << '\n';
  std::cout << "max_deviation=" << format_double(max_deviation) << '\n';
  std::cout << "max_norm_drift=" << format_double(max_norm_drift) << '\n';
  std::cout << "max_energy_drift=" << format_double(max_energy_drift) << '\n';
  const bool ok = max_deviation <= tolerance;
  std::cout << (ok ? "OK" : "FAIL") << ": max deviation "
            << format_double(max_deviation) << " vs tolerance "
            << format_double(tolerance) << '\n';
  return ok ? 0 : 1;
}

int cmd_feasibility(const RunConfig& config, const std::string& out_path) {
  const FeasibilityReport report = full_report(config.feasibility_inputs());

  auto machine_lines = [&report]() {
    std::string text;
    const auto add = [&text](const char* key, double value) {
      text += key;
      text += '=';
      text += format_double(value);
      text += '\n';
    };
    add("report.kappa_sq_ratio", report.kappa_sq_ratio);
    add("report.omega_m_implied_rad_s", report.omega_m_implied);
    add("report.omega_m_implied_hz", report.omega_m_implied / kTwoPi);
    add("report.kappa", report.kappa);
    add("report.nbar", report.nbar);
    add("report.survival_fraction", report.survival_fraction);
    add("report.stability_bound_m", report.stability_bound);
    add("report.revival_leak_fraction", report.revival_leak_fraction);
    add("report.repetition_rate_used_hz", report.repetition_rate_used);
    add("report.counts_per_hour", report.counts_per_hour);
    add("report.implied_rate_for_100_per_hour_hz",
        report.implied_rate_for_100_per_hour);
    add("report.two_photon_ratio", report.two_photon_ratio);
    add("report.gas_collision_rate_per_s", report.gas_collision_rate);
    add("report.cooling_speedup", report.cooling_speedup);
    add("report.quality_margin", report.quality_margin);
    return text;
  };

  std::printf("feasibility report\n");
  std::printf("  coupling ratio 2hN^3L/(pi c M lambda^2)  %.4g  (condition: >= 1)\n",
              report.kappa_sq_ratio);
  std::printf("  implied mirror frequency                 %.4g Hz\n",
              report.omega_m_implied / kTwoPi);
  std::printf("  kappa / nbar                             %.4g / %.4g\n",
              report.kappa, report.nbar);
  std::printf("  photon survival after one period         %.3g %%\n",
              100.0 * report.survival_fraction);
  std::printf("  cavity-length stability bound            %.3g m\n",
              report.stability_bound);
  std::printf("  revival-window leak fraction             %.3g %%\n",
              100.0 * report.revival_leak_fraction);
  std::printf("  detected counts per hour                 %.3g  (at %.4g Hz)\n",
              report.counts_per_hour, report.repetition_rate_used);
  std::printf("  repetition rate for 100 counts/hour      %.4g Hz\n",
              report.implied_rate_for_100_per_hour);
  std::printf("  two-photon contamination                 %.3g %%\n",
              100.0 * report.two_photon_ratio);
  std::printf("  gas collisions                           %.3g /s\n",
              report.gas_collision_rate);
  std::printf("  ground-state cooling speedup             %.4g\n",
              report.cooling_speedup);
  std::printf("  quality margin Q hbar omega_m / kT       %.4g  (condition: >= 1)\n",
              report.quality_margin);
  std::printf("\n%s", machine_lines().c_str());

  if (!out_path.empty()) {
    Output out(out_path);
    out.stream() << machine_lines();
    out.finish(out_path);
  }
  return 0;
}

int cmd_montecarlo(const RunConfig& config, const std::string& out_path) {
  const mc::McConfig mc_cfg = config.mc_config();
  mc::RunCounters counters;
  const std::vector<mc::DetectionEvent> events =
      mc::run_experiment(mc_cfg, counters);

  if (!out_path.empty()) {
    Output out(out_path);
    out.stream() << "run,theta_leak,detector,phase_setting\n";
    for (const auto& event : events) {
      out.stream() << event.run_index << ','
                   << format_double(event.theta_leak) << ','
                   << (event.detector == mc::Detector::D1 ? "D1" : "D2") << ','
                   << format_double(event.phase_setting) << '\n';
    }
    out.finish(out_path);
  }

  std::printf("runs=%lld detected=%lld no_photon=%lld multi_photon=%lld absorbed=%lld\n",
              static_cast<long long>(counters.runs),
              static_cast<long long>(counters.detected),
              static_cast<long long>(counters.no_photon),
              static_cast<long long>(counters.multi_photon),
              static_cast<long long>(counters.absorbed));
  const std::int64_t with_photon = counters.runs - counters.no_photon;
  if (with_photon > 0) {
    std::printf("two_photon_fraction=%s (poisson prediction %s)\n",
                format_double(double(counters.multi_photon) / double(with_photon)).c_str(),
                format_double(two_photon_ratio(mc_cfg.mean_photons)).c_str());
  }

  // Revival-window fringe estimate against the analytic window average.
  const double width_theta =
      std::min(kTwoPi, 2.0 / std::max(1e-12, mc_cfg.kappa * std::sqrt(
                                                 std::max(mc_cfg.nbar, 1.0))));
  const double half_window = width_theta / 8.0;
  std::vector<const mc::DetectionEvent*> window_events;
  Complex predicted_sum = 0.0;
  for (const auto& event : events) {
    if (std::abs(event.theta_leak - kTwoPi) > half_window) continue;
    window_events.push_back(&event);
    double attenuation = 1.0;
    if (mc_cfg.decoherence) {
      attenuation = attenuation_factor(mc_cfg.decoherence->model, mc_cfg.kappa,
                                       mc_cfg.decoherence->omega_m,
                                       event.theta_leak);
    }
    predicted_sum +=
        off_diagonal_thermal(mc_cfg.kappa, mc_cfg.nbar, event.theta_leak).value *
        attenuation;
  }
  std::printf("revival_window_events=%zu (|theta - 2pi| <= %s)\n",
              window_events.size(), format_double(half_window).c_str());
  try {
    const mc::VisibilityEstimate estimate = mc::estimate_visibility(
        events, kTwoPi - half_window, kTwoPi + half_window, mc_cfg.phase_scan);
    const double predicted =
        window_events.empty()
            ? 0.0
            : 2.0 * std::abs(predicted_sum) / double(window_events.size());
    std::printf("revival_visibility=%s stderr=%s predicted=%s\n",
                format_double(estimate.visibility).c_str(),
                format_double(estimate.std_error).c_str(),
                format_double(predicted).c_str());
  } catch (const mc::InsufficientDataError& error) {
    std::printf("revival_visibility=NA (%s)\n", error.what());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"single-photon / movable-mirror interferometer toolkit"};
  app.require_subcommand(1);

  SharedArgs vis_args, fig2_args, val_args, feas_args, mc_args;

  auto* vis = app.add_subcommand(
      "visibility", "interference visibility curve as CSV (theta,visibility,phase_rad)");
  double theta_min = 0.0, theta_max = kTwoPi;
  int vis_samples = 600;
  std::string vis_out;
  add_shared_options(vis, vis_args);
  vis->add_option("--theta-min", theta_min, "start of the theta range (rad)");
  vis->add_option("--theta-max", theta_max, "end of the theta range (rad)");
  vis->add_option("--samples", vis_samples, "base number of samples");
  vis->add_option("--out", vis_out, "output CSV path (default: stdout)");

  auto* fig2 = app.add_subcommand(
      "fig2", "two-temperature visibility dataset (1 mK and 60 uK, kappa = 1)");
  int fig2_samples = 800;
  std::string fig2_out;
  add_shared_options(fig2, fig2_args);
  fig2->add_option("--samples", fig2_samples, "base number of samples");
  fig2->add_option("--out", fig2_out, "output CSV path (default: stdout)");

  auto* val = app.add_subcommand(
      "validate", "randomized Fock-space check of the closed-form dynamics");
  int val_points = 200, val_nmax = 96;
  double val_tolerance = 1e-6, val_kappa_max = 1.5;
  add_shared_options(val, val_args);
  val->add_option("--points", val_points, "number of random (kappa, beta, theta) points");
  val->add_option("--tolerance", val_tolerance, "maximum allowed deviation");
  val->add_option("--nmax", val_nmax, "Fock truncation dimension");
  val->add_option("--kappa-max", val_kappa_max, "upper bound of the kappa range");

  auto* feas = app.add_subcommand(
      "feasibility", "experimental-requirements report");
  std::string feas_out;
  add_shared_options(feas, feas_args);
  feas->add_option("--out", feas_out, "write the key=value block to this path");

  auto* mc_cmd = app.add_subcommand(
      "montecarlo", "stochastic runs of the detection protocol");
  std::string mc_out;
  add_shared_options(mc_cmd, mc_args);
  mc_cmd->add_option("--out", mc_out,
                     "events CSV path (run,theta_leak,detector,phase_setting)");

  try {
    app.parse(argc, argv);
    if (vis->parsed())
      return cmd_visibility(load_config(vis_args), theta_min, theta_max,
                            vis_samples, vis_out);
    if (fig2->parsed())
      return cmd_fig2(load_config(fig2_args), fig2_samples, fig2_out);
    if (val->parsed())
      return cmd_validate(load_config(val_args), val_points, val_tolerance,
                          val_nmax, val_kappa_max);
    if (feas->parsed())
      return cmd_feasibility(load_config(feas_args), feas_out);
    if (mc_cmd->parsed())
      return cmd_montecarlo(load_config(mc_args), mc_out);
    return 2;
  } catch (const CLI::ParseError& error) {
    const int code = app.exit(error);
    return code == 0 ? 0 : 2;
  } catch (const ConfigError& error) {
    std::cerr << "config error: " << error.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& error) {
    std::cerr << "config error: " << error.what() << '\n';
    return 2;
  } catch (const IoError& error) {
    std::cerr << "io error: " << error.what() << '\n';
    return 3;
  } catch (const fock::TruncationError& error) {
    std::cerr << "truncation error: " << error.what() << '\n';
    return 1;
  } catch (const std::exception& error) {
    std::cerr << "error: " << error.what() << '\n';
    return 1;
  }
}
