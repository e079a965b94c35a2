#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "clearkit/cavity.hpp"
#include "clearkit/design.hpp"
#include "clearkit/device_io.hpp"
#include "clearkit/error.hpp"
#include "clearkit/experiments.hpp"
#include "clearkit/optim.hpp"
#include "clearkit/ramsey.hpp"
#include "clearkit/units.hpp"

namespace py = pybind11;
using namespace pybind11::literals;
using namespace clearkit;

namespace {

SystemParams device_from_json(const std::string& text) {
  return parse_device(nlohmann::json::parse(text)).params;
}

std::vector<std::string> run_scenario(const std::string& name, const std::string& out_dir,
                                      const std::map<std::string, std::string>& overrides,
                                      const std::string& device_json) {
  const auto sc = experiments::parse_scenario(name);
  auto s = experiments::default_settings(sc);
  for (const auto& [k, v] : overrides) experiments::apply_override(s, k, v);
  const auto device =
      device_json.empty() ? reference_device_json() : nlohmann::json::parse(device_json);
  py::gil_scoped_release release;
  return experiments::run_scenario(sc, device, s, out_dir);
}

}  // namespace

PYBIND11_MODULE(clearkit, m) {
  m.doc() = "CLEAR readout-cavity reset: simulation, pulse design, Ramsey fitting, optimization";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);

  py::enum_<QubitState>(m, "QubitState")
      .value("Ground", QubitState::Ground)
      .value("Excited", QubitState::Excited);

  py::class_<SystemParams>(m, "SystemParams")
      .def(py::init<>())
      .def_readwrite("kappa", &SystemParams::kappa)
      .def_readwrite("chi", &SystemParams::chi)
      .def_readwrite("kerr", &SystemParams::kerr)
      .def_readwrite("g", &SystemParams::g)
      .def_readwrite("f_qubit", &SystemParams::f_qubit)
      .def_readwrite("f_cavity_dressed", &SystemParams::f_cavity_dressed)
      .def_readwrite("f_cavity_bare", &SystemParams::f_cavity_bare)
      .def_readwrite("anharmonicity", &SystemParams::anharmonicity)
      .def_readwrite("gamma2", &SystemParams::gamma2)
      .def("t_cav", &SystemParams::t_cav)
      .def("validate", [](const SystemParams& p) { return validate(p); },
           "raises on invalid values, returns warnings");

  m.def("reference_device", [] { return device_from_json(reference_device_json().dump()); },
        "reference transmon/cavity with derived g and K = -14 kHz");
  m.def("device_from_json", &device_from_json, "text"_a);
  m.def("convert_frequency", &units::convert_frequency, "mhz"_a);
  m.def("detuning_for_state", &detuning_for_state);

  py::class_<PulseSegment>(m, "PulseSegment")
      .def(py::init<double, cplx>(), "duration"_a, "amplitude"_a)
      .def_readonly("duration", &PulseSegment::duration)
      .def_readonly("amplitude", &PulseSegment::amplitude);
  py::class_<PulseEnvelope>(m, "PulseEnvelope")
      .def(py::init<std::vector<PulseSegment>, std::string>(), "segments"_a, "label"_a = "")
      .def("segments", &PulseEnvelope::segments)
      .def("total_duration", &PulseEnvelope::total_duration)
      .def("boundaries", &PulseEnvelope::boundaries)
      .def_property_readonly("label", &PulseEnvelope::label)
      .def("__len__", &PulseEnvelope::size);

  py::class_<cavity::DriveCalibration>(m, "DriveCalibration")
      .def_readonly("eps_one_photon", &cavity::DriveCalibration::eps_one_photon)
      .def("eps_for", &cavity::DriveCalibration::eps_for, "p_norm"_a)
      .def("p_norm_of", &cavity::DriveCalibration::p_norm_of, "eps"_a);
  m.def("calibrate_drive", &cavity::calibrate_drive);
  m.def("steady_state_linear", &cavity::steady_state_linear, "delta"_a, "kappa"_a, "eps"_a);
  m.def("propagate_linear", &cavity::propagate_linear, "alpha0"_a, "delta"_a, "kappa"_a, "eps"_a,
        "t"_a);
  m.def("propagate_kerr", &cavity::propagate_kerr, "alpha0"_a, "delta"_a, "kappa"_a, "kerr"_a,
        "eps"_a, "t"_a, "dt"_a);
  m.def("default_kerr_step", &cavity::default_kerr_step);
  m.def(
      "simulate_pulse",
      [](const SystemParams& p, const PulseEnvelope& pulse, bool kerr, double sample_interval) {
        const auto tr = cavity::simulate_pulse(p, pulse, {kerr, sample_interval});
        return py::dict("t"_a = tr.times, "ground"_a = tr.ground, "excited"_a = tr.excited);
      },
      "params"_a, "pulse"_a, "kerr"_a = false, "sample_interval"_a = 0.024);
  m.def("final_amplitude", &cavity::final_amplitude, "params"_a, "pulse"_a, "state"_a,
        "kerr"_a = false, "alpha0"_a = cplx{}, "kerr_step"_a = 0.0);
  m.def(
      "steady_state_kerr",
      [](const SystemParams& p, double eps, QubitState s) {
        const auto r = cavity::steady_state_kerr(p, eps, s);
        return py::make_tuple(r.photons, r.bistable);
      },
      "params"_a, "eps"_a, "state"_a);
  m.def("free_decay", &cavity::free_decay);

  py::class_<design::ClearSpec>(m, "ClearSpec")
      .def(py::init<>())
      .def_readwrite("eps_steady", &design::ClearSpec::eps_steady)
      .def_readwrite("t_up1", &design::ClearSpec::t_up1)
      .def_readwrite("t_up2", &design::ClearSpec::t_up2)
      .def_readwrite("t_flat", &design::ClearSpec::t_flat)
      .def_readwrite("t_dn1", &design::ClearSpec::t_dn1)
      .def_readwrite("t_dn2", &design::ClearSpec::t_dn2)
      .def_readwrite("amp_up1", &design::ClearSpec::amp_up1)
      .def_readwrite("amp_up2", &design::ClearSpec::amp_up2)
      .def_readwrite("amp_dn1", &design::ClearSpec::amp_dn1)
      .def_readwrite("amp_dn2", &design::ClearSpec::amp_dn2)
      .def("complete", &design::ClearSpec::complete);
  m.def("resolve_clear_spec",
        [](const SystemParams& p, const design::ClearSpec& s) {
          return design::resolve_clear_spec(p, s).spec;
        });
  m.def("make_clear_pulse", &design::make_clear_pulse);
  m.def("make_square_pulse", &design::make_square_pulse, "eps"_a, "duration"_a, "tail"_a = 0.0);
  m.def(
      "solve_segment_pair",
      [](const SystemParams& p, double t1, double t2, cplx start, cplx target) {
        const auto r = design::solve_segment_pair(p, t1, t2, start, target);
        return py::make_tuple(r.eps1, r.eps2, r.condition_number);
      },
      "params"_a, "t1"_a, "t2"_a, "start"_a, "target"_a);
  m.def("derive_g", &design::derive_g);
  m.def("kerr_constant", py::overload_cast<const SystemParams&>(&design::kerr_constant));

  py::class_<ramsey::RamseyConfig>(m, "RamseyConfig")
      .def(py::init<>())
      .def_readwrite("detuning", &ramsey::RamseyConfig::detuning)
      .def_readwrite("gamma2", &ramsey::RamseyConfig::gamma2)
      .def_readwrite("t_grid", &ramsey::RamseyConfig::t_grid)
      .def_readwrite("noise_sigma", &ramsey::RamseyConfig::noise_sigma)
      .def_readwrite("rng_seed", &ramsey::RamseyConfig::rng_seed);
  py::class_<ramsey::RamseyTrace>(m, "RamseyTrace")
      .def(py::init<>())
      .def_readwrite("t_R", &ramsey::RamseyTrace::t_R)
      .def_readwrite("signal", &ramsey::RamseyTrace::signal)
      .def_readwrite("config", &ramsey::RamseyTrace::config);
  py::class_<ramsey::FitResult>(m, "FitResult")
      .def_readonly("n0", &ramsey::FitResult::n0)
      .def_readonly("phi0", &ramsey::FitResult::phi0)
      .def_readonly("residual_norm", &ramsey::FitResult::residual_norm)
      .def_readonly("iterations", &ramsey::FitResult::iterations)
      .def_readonly("converged", &ramsey::FitResult::converged)
      .def_readonly("n0_stderr", &ramsey::FitResult::n0_stderr)
      .def_readonly("phi0_stderr", &ramsey::FitResult::phi0_stderr);
  m.def("default_ramsey_config", &ramsey::default_config, "params"_a, "noise_sigma"_a = 0.0,
        "seed"_a = 0);
  m.def("ramsey_signal", &ramsey::ramsey_signal, "n0"_a, "phi0"_a, "params"_a, "config"_a, "t_R"_a);
  m.def("synthesize_trace", &ramsey::synthesize_trace, "n0"_a, "phi0"_a, "params"_a, "config"_a);
  m.def("fit_ramsey", &ramsey::fit_ramsey, "trace"_a, "params"_a);
  m.def(
      "fit_exponential_decay",
      [](const std::vector<std::pair<double, double>>& pts, double floor) {
        std::vector<ramsey::DecayPoint> v;
        for (const auto& [t, n] : pts) v.push_back({t, n});
        const auto f = ramsey::fit_exponential_decay(v, floor);
        return py::dict("amplitude"_a = f.amplitude, "rate"_a = f.rate,
                        "rate_stderr"_a = f.rate_stderr, "r_squared"_a = f.r_squared,
                        "used"_a = f.used, "excluded"_a = f.excluded);
      },
      "points"_a, "floor"_a = 1e-3);

  m.def(
      "evaluate_ringdown",
      [](const SystemParams& p, const design::ClearSpec& base, double a1, double a2, bool kerr,
         double noise_sigma, std::uint64_t seed) {
        optim::MeasurementEmulator em{p, design::resolve_clear_spec(p, base).spec, kerr,
                                      ramsey::default_config(p, noise_sigma, seed)};
        const auto ev = optim::evaluate_ringdown(em, a1, a2);
        return py::dict("n0_ground"_a = ev.n0_ground, "n0_excited"_a = ev.n0_excited,
                        "objective"_a = ev.objective, "flagged"_a = ev.flagged);
      },
      "params"_a, "base"_a, "amp_dn1"_a, "amp_dn2"_a, "kerr"_a = true, "noise_sigma"_a = 0.01,
      "seed"_a = 0);
  m.def(
      "optimize_ringdown",
      [](const SystemParams& p, const design::ClearSpec& base, double a1, double a2, bool kerr,
         double noise_sigma, std::uint64_t seed, int max_evaluations, double f_tol) {
        optim::MeasurementEmulator em{p, design::resolve_clear_spec(p, base).spec, kerr,
                                      ramsey::default_config(p, noise_sigma, seed)};
        optim::SimplexSettings st;
        st.max_evaluations = max_evaluations;
        st.f_tol = f_tol;
        optim::OptimizationRun run;
        {
          py::gil_scoped_release release;
          run = optim::optimize_ringdown(em, a1, a2, st);
        }
        py::list history;
        for (const auto& h : run.history)
          history.append(py::dict("iteration"_a = h.iteration, "parameters"_a = h.parameters,
                                  "objective"_a = h.objective, "n0_ground"_a = h.n0_ground,
                                  "n0_excited"_a = h.n0_excited, "flagged"_a = h.flagged));
        return py::dict("history"_a = history, "best_parameters"_a = run.best.parameters,
                        "best_objective"_a = run.best.objective, "converged"_a = run.converged);
      },
      "params"_a, "base"_a, "amp_dn1"_a, "amp_dn2"_a, "kerr"_a = true, "noise_sigma"_a = 0.01,
      "seed"_a = 0, "max_evaluations"_a = 300, "f_tol"_a = 1e-3);

  m.def("scenario_names", &experiments::scenario_names);
  m.def("run_scenario", &run_scenario, "name"_a, "out_dir"_a,
        "overrides"_a = std::map<std::string, std::string>{}, "device_json"_a = "",
        "runs a scenario, writes its artifacts and returns the file names");
}
