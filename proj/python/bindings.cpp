#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mirrorsim/closed_form.hpp"
#include "mirrorsim/config.hpp"
#include "mirrorsim/decoherence.hpp"
#include "mirrorsim/feasibility.hpp"
#include "mirrorsim/fock.hpp"
#include "mirrorsim/montecarlo.hpp"
#include "mirrorsim/params.hpp"

namespace py = pybind11;
using namespace mirrorsim;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Single-photon / movable-mirror interferometer simulator";
  m.attr("__version__") = "0.1.0";

  // --- parameters ---------------------------------------------------------
  py::class_<PhysicalConstants>(m, "PhysicalConstants")
      .def(py::init<>())
      .def_readonly("hbar", &PhysicalConstants::hbar)
      .def_readonly("c", &PhysicalConstants::c)
      .def_readonly("k_B", &PhysicalConstants::k_B);
  m.attr("constants") = constants;

  py::class_<MirrorParams>(m, "MirrorParams")
      .def(py::init<double, double, double>(), py::arg("mass"),
           py::arg("omega_m"), py::arg("quality_factor"))
      .def_readwrite("mass", &MirrorParams::mass)
      .def_readwrite("omega_m", &MirrorParams::omega_m)
      .def_readwrite("quality_factor", &MirrorParams::quality_factor)
      .def("gamma_m", &MirrorParams::gamma_m);

  py::class_<CavityParams>(m, "CavityParams")
      .def(py::init<double, double, double, double>(), py::arg("length"),
           py::arg("wavelength"), py::arg("loss_per_reflection") = 0.0,
           py::arg("transmission") = 0.0)
      .def_readwrite("length", &CavityParams::length)
      .def_readwrite("wavelength", &CavityParams::wavelength)
      .def_readwrite("loss_per_reflection", &CavityParams::loss_per_reflection)
      .def_readwrite("transmission", &CavityParams::transmission);

  py::class_<EnvironmentParams>(m, "EnvironmentParams")
      .def(py::init<double, double, double, double>(), py::arg("temperature"),
           py::arg("detection_efficiency") = 1.0,
           py::arg("mean_photons_per_pulse") = 0.0,
           py::arg("repetition_rate") = 0.0)
      .def_readwrite("temperature", &EnvironmentParams::temperature)
      .def_readwrite("detection_efficiency",
                     &EnvironmentParams::detection_efficiency)
      .def_readwrite("mean_photons_per_pulse",
                     &EnvironmentParams::mean_photons_per_pulse)
      .def_readwrite("repetition_rate", &EnvironmentParams::repetition_rate);

  py::class_<CouplingDerived>(m, "CouplingDerived")
      .def_readonly("omega_c", &CouplingDerived::omega_c)
      .def_readonly("g", &CouplingDerived::g)
      .def_readonly("kappa", &CouplingDerived::kappa)
      .def_readonly("n_roundtrips", &CouplingDerived::n_roundtrips)
      .def_readonly("nbar", &CouplingDerived::nbar)
      .def_readonly("x_zp", &CouplingDerived::x_zp);

  m.def("thermal_occupation", &thermal_occupation, py::arg("temperature"),
        py::arg("omega_m"));
  m.def("derive_coupling", &derive_coupling, py::arg("cavity"),
        py::arg("mirror"), py::arg("temperature") = 0.0);
  m.def("implied_omega_m", &implied_omega_m, py::arg("n_roundtrips"),
        py::arg("length"));

  // --- closed-form dynamics ------------------------------------------------
  py::class_<BranchState>(m, "BranchState")
      .def_readonly("beta_b", &BranchState::beta_b)
      .def_readonly("beta_a", &BranchState::beta_a)
      .def_readonly("kerr_phase", &BranchState::kerr_phase);

  py::class_<OffDiagonal>(m, "OffDiagonal")
      .def_readonly("value", &OffDiagonal::value)
      .def("modulus", &OffDiagonal::modulus)
      .def("phase", &OffDiagonal::phase)
      .def("visibility", &OffDiagonal::visibility);

  py::class_<VisibilityCurve>(m, "VisibilityCurve")
      .def_readonly("thetas", &VisibilityCurve::thetas)
      .def_readonly("visibility", &VisibilityCurve::visibility)
      .def_readonly("phase", &VisibilityCurve::phase);

  m.def("evolve_state", &evolve_state, py::arg("kappa"), py::arg("beta"),
        py::arg("theta"));
  m.def("off_diagonal_coherent", &off_diagonal_coherent, py::arg("kappa"),
        py::arg("beta"), py::arg("theta"));
  m.def("off_diagonal_thermal", &off_diagonal_thermal, py::arg("kappa"),
        py::arg("nbar"), py::arg("theta"));
  m.def("visibility_curve", &visibility_curve, py::arg("kappa"),
        py::arg("nbar"), py::arg("thetas"),
        py::arg("attenuation") = AttenuationFn{});
  m.def("revival_width", &revival_width, py::arg("kappa"), py::arg("omega_m"),
        py::arg("nbar"));
  m.def("revival_theta_grid", &revival_theta_grid, py::arg("kappa"),
        py::arg("nbar"), py::arg("base_samples"));
  m.def("revival_fwhm", &revival_fwhm, py::arg("curve"));

  // --- Fock-space oracle ---------------------------------------------------
  py::register_exception<fock::TruncationError>(m, "TruncationError");

  py::class_<fock::HamiltonianBlocks>(m, "HamiltonianBlocks")
      .def_readonly("h0", &fock::HamiltonianBlocks::h0)
      .def_readonly("h1", &fock::HamiltonianBlocks::h1);

  py::class_<fock::FockVector>(m, "FockVector")
      .def_readonly("amplitudes", &fock::FockVector::amplitudes)
      .def("n_max", &fock::FockVector::n_max)
      .def("norm", &fock::FockVector::norm)
      .def("tail_mass", &fock::FockVector::tail_mass, py::arg("levels") = 4);

  m.def("hamiltonian_blocks", &fock::hamiltonian_blocks, py::arg("kappa"),
        py::arg("n_max"));
  m.def("required_truncation", &fock::required_truncation, py::arg("beta_mag"),
        py::arg("kappa") = 0.0);
  m.def("coherent_state_vector", &fock::coherent_state_vector, py::arg("beta"),
        py::arg("n_max"));
  m.def("initial_superposition", &fock::initial_superposition, py::arg("beta"),
        py::arg("n_max"));
  m.def("propagate", &fock::propagate, py::arg("state"), py::arg("kappa"),
        py::arg("theta"));
  m.def("reduced_photon_offdiagonal",
        py::overload_cast<const fock::FockVector&>(
            &fock::reduced_photon_offdiagonal),
        py::arg("state"));
  m.def("mirror_number", &fock::mirror_number, py::arg("state"), py::arg("row"));
  m.def("mirror_position", &fock::mirror_position, py::arg("state"),
        py::arg("row"));
  m.def("energy_expectation", &fock::energy_expectation, py::arg("state"),
        py::arg("kappa"));

  // --- decoherence -----------------------------------------------------------
  py::enum_<SeparationMode>(m, "SeparationMode")
      .value("fixed", SeparationMode::fixed)
      .value("time_dependent", SeparationMode::time_dependent);

  py::class_<DecoherenceModel>(m, "DecoherenceModel")
      .def(py::init<double, double, double, SeparationMode>(),
           py::arg("gamma_m"), py::arg("temperature"), py::arg("mass"),
           py::arg("separation_mode") = SeparationMode::fixed)
      .def_readwrite("gamma_m", &DecoherenceModel::gamma_m)
      .def_readwrite("temperature", &DecoherenceModel::temperature)
      .def_readwrite("mass", &DecoherenceModel::mass)
      .def_readwrite("separation_mode", &DecoherenceModel::separation_mode);

  m.def("decoherence_rate", &decoherence_rate, py::arg("model"),
        py::arg("delta_x"));
  m.def("quality_condition", &quality_condition, py::arg("quality_factor"),
        py::arg("temperature"), py::arg("omega_m"));
  m.def("attenuation_factor", &attenuation_factor, py::arg("model"),
        py::arg("kappa"), py::arg("omega_m"), py::arg("theta"));

  // --- feasibility -------------------------------------------------------------
  py::class_<GasParams>(m, "GasParams")
      .def(py::init<>())
      .def_readwrite("density", &GasParams::density)
      .def_readwrite("temperature", &GasParams::temperature)
      .def_readwrite("molecule_mass", &GasParams::molecule_mass)
      .def_readwrite("area", &GasParams::area);

  py::class_<FeasibilityReport>(m, "FeasibilityReport")
      .def_readonly("kappa_sq_ratio", &FeasibilityReport::kappa_sq_ratio)
      .def_readonly("omega_m_implied", &FeasibilityReport::omega_m_implied)
      .def_readonly("kappa", &FeasibilityReport::kappa)
      .def_readonly("nbar", &FeasibilityReport::nbar)
      .def_readonly("survival_fraction", &FeasibilityReport::survival_fraction)
      .def_readonly("stability_bound", &FeasibilityReport::stability_bound)
      .def_readonly("revival_leak_fraction",
                    &FeasibilityReport::revival_leak_fraction)
      .def_readonly("repetition_rate_used",
                    &FeasibilityReport::repetition_rate_used)
      .def_readonly("counts_per_hour", &FeasibilityReport::counts_per_hour)
      .def_readonly("implied_rate_for_100_per_hour",
                    &FeasibilityReport::implied_rate_for_100_per_hour)
      .def_readonly("two_photon_ratio", &FeasibilityReport::two_photon_ratio)
      .def_readonly("gas_collision_rate",
                    &FeasibilityReport::gas_collision_rate)
      .def_readonly("cooling_speedup", &FeasibilityReport::cooling_speedup)
      .def_readonly("quality_margin", &FeasibilityReport::quality_margin);

  py::class_<FeasibilityInputs>(m, "FeasibilityInputs")
      .def(py::init<>())
      .def_readwrite("cavity", &FeasibilityInputs::cavity)
      .def_readwrite("mirror_mass", &FeasibilityInputs::mirror_mass)
      .def_readwrite("quality_factor", &FeasibilityInputs::quality_factor)
      .def_readwrite("n_roundtrips", &FeasibilityInputs::n_roundtrips)
      .def_readwrite("env", &FeasibilityInputs::env)
      .def_readwrite("gas", &FeasibilityInputs::gas);

  m.def("kappa_squared_condition", &kappa_squared_condition,
        py::arg("n_roundtrips"), py::arg("length"), py::arg("mass"),
        py::arg("wavelength"));
  m.def("photon_survival", &photon_survival, py::arg("loss_per_reflection"),
        py::arg("transmission"), py::arg("n_roundtrips"));
  m.def("stability_requirement", &stability_requirement, py::arg("wavelength"),
        py::arg("n_roundtrips"));
  m.def("revival_leak_fraction", &revival_leak_fraction, py::arg("kappa"),
        py::arg("nbar"));
  m.def("count_rate", &count_rate, py::arg("env"), py::arg("survival"),
        py::arg("leak_fraction"));
  m.def("two_photon_ratio", &two_photon_ratio, py::arg("mu"));
  m.def("gas_collision_rate",
        py::overload_cast<double, double, double, double>(&gas_collision_rate),
        py::arg("density"), py::arg("gas_temperature"),
        py::arg("molecule_mass"), py::arg("area"));
  m.def("cooling_speedup", &cooling_speedup, py::arg("nbar"));
  m.def("full_report", &full_report, py::arg("inputs"));

  // --- monte carlo ---------------------------------------------------------
  py::register_exception<mc::InsufficientDataError>(m, "InsufficientDataError");

  py::class_<mc::Rng>(m, "Rng")
      .def(py::init<std::uint64_t>(), py::arg("seed"))
      .def(py::init<std::uint64_t, std::uint64_t>(), py::arg("seed"),
           py::arg("stream"))
      .def("uniform", &mc::Rng::uniform)
      .def("normal", &mc::Rng::normal)
      .def("exponential", &mc::Rng::exponential, py::arg("rate"))
      .def("poisson", &mc::Rng::poisson, py::arg("mean"));

  py::enum_<mc::Detector>(m, "Detector")
      .value("D1", mc::Detector::D1)
      .value("D2", mc::Detector::D2);

  py::class_<mc::DetectionEvent>(m, "DetectionEvent")
      .def_readonly("run_index", &mc::DetectionEvent::run_index)
      .def_readonly("theta_leak", &mc::DetectionEvent::theta_leak)
      .def_readonly("detector", &mc::DetectionEvent::detector)
      .def_readonly("phase_setting", &mc::DetectionEvent::phase_setting);

  py::class_<mc::AttenuationSpec>(m, "AttenuationSpec")
      .def(py::init<DecoherenceModel, double>(), py::arg("model"),
           py::arg("omega_m"))
      .def_readwrite("model", &mc::AttenuationSpec::model)
      .def_readwrite("omega_m", &mc::AttenuationSpec::omega_m);

  py::class_<mc::McConfig>(m, "McConfig")
      .def(py::init<>())
      .def_readwrite("kappa", &mc::McConfig::kappa)
      .def_readwrite("nbar", &mc::McConfig::nbar)
      .def_readwrite("n_runs", &mc::McConfig::n_runs)
      .def_readwrite("seed", &mc::McConfig::seed)
      .def_readwrite("mean_photons", &mc::McConfig::mean_photons)
      .def_readwrite("leak_rate_per_theta", &mc::McConfig::leak_rate_per_theta)
      .def_readwrite("absorbed_fraction", &mc::McConfig::absorbed_fraction)
      .def_readwrite("interferometer_phase",
                     &mc::McConfig::interferometer_phase)
      .def_readwrite("phase_scan", &mc::McConfig::phase_scan)
      .def_readwrite("decoherence", &mc::McConfig::decoherence);

  py::class_<mc::RunCounters>(m, "RunCounters")
      .def(py::init<>())
      .def_readonly("runs", &mc::RunCounters::runs)
      .def_readonly("no_photon", &mc::RunCounters::no_photon)
      .def_readonly("multi_photon", &mc::RunCounters::multi_photon)
      .def_readonly("absorbed", &mc::RunCounters::absorbed)
      .def_readonly("detected", &mc::RunCounters::detected);

  py::class_<mc::VisibilityEstimate>(m, "VisibilityEstimate")
      .def_readonly("visibility", &mc::VisibilityEstimate::visibility)
      .def_readonly("std_error", &mc::VisibilityEstimate::std_error);

  py::class_<mc::ThermalAverage>(m, "ThermalAverage")
      .def_readonly("mean", &mc::ThermalAverage::mean)
      .def_readonly("std_error", &mc::ThermalAverage::std_error);

  m.def("sample_thermal_beta", &mc::sample_thermal_beta, py::arg("nbar"),
        py::arg("rng"));
  m.def("click_probability", &mc::click_probability, py::arg("config"),
        py::arg("beta"), py::arg("theta_leak"), py::arg("phase_setting"));
  m.def(
      "run_experiment",
      [](const mc::McConfig& config) {
        mc::RunCounters counters;
        auto events = mc::run_experiment(config, counters);
        return py::make_tuple(std::move(events), counters);
      },
      py::arg("config"), "Returns (events, counters).");
  m.def("estimate_visibility", &mc::estimate_visibility, py::arg("events"),
        py::arg("theta_lo"), py::arg("theta_hi"), py::arg("phase_scan"));
  m.def("thermal_average_check", &mc::thermal_average_check, py::arg("kappa"),
        py::arg("nbar"), py::arg("theta"), py::arg("n_samples"),
        py::arg("rng"));

  // --- run configuration ----------------------------------------------------
  py::register_exception<ConfigError>(m, "ConfigError");

  py::enum_<DecoherenceSetting>(m, "DecoherenceSetting")
      .value("off", DecoherenceSetting::off)
      .value("fixed", DecoherenceSetting::fixed)
      .value("time_dependent", DecoherenceSetting::time_dependent);

  py::class_<RunConfig>(m, "RunConfig")
      .def(py::init<>())
      .def_static("from_file", &RunConfig::from_file, py::arg("path"))
      .def("apply", &RunConfig::apply, py::arg("key_value"))
      .def("apply_text", &RunConfig::apply_text, py::arg("text"))
      .def("to_key_values", &RunConfig::to_key_values)
      .def("omega_m", &RunConfig::omega_m)
      .def("cavity", &RunConfig::cavity)
      .def("mirror", &RunConfig::mirror)
      .def("env", &RunConfig::env)
      .def("gas", &RunConfig::gas)
      .def("coupling", &RunConfig::coupling)
      .def("feasibility_inputs", &RunConfig::feasibility_inputs)
      .def("mc_config", &RunConfig::mc_config);
}
