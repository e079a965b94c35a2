#include "clearkit/optim.hpp"

#include <algorithm>
#include <cmath>
#include <future>

#include "clearkit/cavity.hpp"
#include "clearkit/error.hpp"
#include "clearkit/rng.hpp"

namespace clearkit::optim {
namespace {

bool physical(const design::ClearSpec& s) {
  try {
    s.validate();
  } catch (const ConfigError&) {
    return false;
  }
  return true;
}

}  // namespace

std::uint64_t evaluation_seed(const MeasurementEmulator& em, int index, QubitState s) {
  const std::uint64_t base =
      em.ramsey.rng_seed + (em.noise == NoisePolicy::Fresh ? static_cast<std::uint64_t>(index) : 0);
  return derive_seed(base, s == QubitState::Ground ? 0 : 1);
}

namespace {

ramsey::RamseyTrace branch_trace(const MeasurementEmulator& em, const PulseEnvelope& pulse,
                                 QubitState s, int index, double& photons) {
  photons = std::norm(cavity::final_amplitude(em.params, pulse, s, em.kerr_enabled));
  auto cfg = em.ramsey;
  cfg.rng_seed = evaluation_seed(em, index, s);
  return ramsey::synthesize_trace(photons, 0.0, em.params, cfg);
}

}  // namespace

ramsey::RamseyTrace measure_trace(const MeasurementEmulator& em, const design::ClearSpec& spec,
                                  QubitState s, int index) {
  double n = 0.0;
  return branch_trace(em, design::make_clear_pulse(em.params, spec), s, index, n);
}

Evaluation evaluate_spec(const MeasurementEmulator& em, const design::ClearSpec& spec, int index) {
  Evaluation ev;
  if (!spec.complete() || !physical(spec)) {
    ev.objective = kFailedObjective;
    ev.flagged = true;
    return ev;
  }
  const auto pulse = design::make_clear_pulse(em.params, spec);

  auto measure = [&](QubitState s) {
    double n = 0.0;
    const auto trace = branch_trace(em, pulse, s, index, n);
    return std::pair{n, ramsey::fit_ramsey(trace, em.params)};
  };
  // branches are independent; the excited one runs alongside
  auto excited = std::async(std::launch::async, measure, QubitState::Excited);
  const auto [ng, fg] = measure(QubitState::Ground);
  const auto [ne, fe] = excited.get();

  ev.true_ground = ng;
  ev.true_excited = ne;
  ev.n0_ground = fg.n0;
  ev.n0_excited = fe.n0;
  if (!fg.converged || !fe.converged) {
    ev.flagged = true;
    ev.objective = kFailedObjective;
    return ev;
  }
  ev.objective = em.scalarization == Scalarization::Max ? std::max(fg.n0, fe.n0)
                                                        : 0.5 * (fg.n0 + fe.n0);
  return ev;
}

Evaluation evaluate_ringdown(const MeasurementEmulator& em, double amp_dn1, double amp_dn2,
                             int index) {
  auto spec = em.base;
  spec.amp_dn1 = amp_dn1;
  spec.amp_dn2 = amp_dn2;
  return evaluate_spec(em, spec, index);
}

const std::vector<std::string>& tunable_parameters() {
  static const std::vector<std::string> names{"amp_up1", "amp_up2", "amp_dn1",    "amp_dn2",
                                              "t_up1",   "t_up2",   "t_flat",     "t_dn1",
                                              "t_dn2",   "eps_steady"};
  return names;
}

void set_parameter(design::ClearSpec& s, const std::string& name, double v) {
  if (name == "amp_up1") s.amp_up1 = v;
  else if (name == "amp_up2") s.amp_up2 = v;
  else if (name == "amp_dn1") s.amp_dn1 = v;
  else if (name == "amp_dn2") s.amp_dn2 = v;
  else if (name == "t_up1") s.t_up1 = v;
  else if (name == "t_up2") s.t_up2 = v;
  else if (name == "t_flat") s.t_flat = v;
  else if (name == "t_dn1") s.t_dn1 = v;
  else if (name == "t_dn2") s.t_dn2 = v;
  else if (name == "eps_steady") s.eps_steady = v;
  else throw ConfigError("unknown CLEAR parameter '" + name + "'");
}

double get_parameter(const design::ClearSpec& s, const std::string& name) {
  auto amp = [&](const std::optional<double>& a) {
    if (!a) throw ConfigError("CLEAR parameter '" + name + "' is not set");
    return *a;
  };
  if (name == "amp_up1") return amp(s.amp_up1);
  if (name == "amp_up2") return amp(s.amp_up2);
  if (name == "amp_dn1") return amp(s.amp_dn1);
  if (name == "amp_dn2") return amp(s.amp_dn2);
  if (name == "t_up1") return s.t_up1;
  if (name == "t_up2") return s.t_up2;
  if (name == "t_flat") return s.t_flat;
  if (name == "t_dn1") return s.t_dn1;
  if (name == "t_dn2") return s.t_dn2;
  if (name == "eps_steady") return s.eps_steady;
  throw ConfigError("unknown CLEAR parameter '" + name + "'");
}

design::ClearSpec OptimizationRun::best_spec(const design::ClearSpec& base) const {
  auto s = base;
  for (std::size_t i = 0; i < names.size(); ++i) set_parameter(s, names[i], best.parameters[i]);
  return s;
}

OptimizationRun optimize_generic(const MeasurementEmulator& em,
                                 const std::vector<std::string>& names,
                                 const std::vector<double>& initial,
                                 const SimplexSettings& settings) {
  if (names.empty() || names.size() > 6) throw ConfigError("optimize 1 to 6 parameters");
  if (names.size() != initial.size())
    throw ConfigError("initial point size does not match parameter names");
  for (const auto& n : names) {
    if (std::find(tunable_parameters().begin(), tunable_parameters().end(), n) ==
        tunable_parameters().end())
      throw ConfigError("unknown CLEAR parameter '" + n + "'");
  }
  if (settings.max_evaluations < 1) throw ConfigError("max_iterations must be >= 1");
  if (!em.base.complete()) throw ConfigError("emulator base spec must have all amplitudes set");

  OptimizationRun run;
  run.names = names;
  run.settings = settings;
  run.rng_seed = em.ramsey.rng_seed;

  const Objective objective = [&](const std::vector<double>& x) {
    auto spec = em.base;
    for (std::size_t i = 0; i < names.size(); ++i) set_parameter(spec, names[i], x[i]);
    const int index = static_cast<int>(run.history.size());
    const auto ev = evaluate_spec(em, spec, index);
    run.history.push_back({index, x, ev.objective, ev.n0_ground, ev.n0_excited, ev.flagged});
    return ev.objective;
  };
  const auto result = nelder_mead(objective, initial, settings);
  run.converged = result.converged;
  run.best = *std::min_element(run.history.begin(), run.history.end(),
                               [](const TrialRecord& a, const TrialRecord& b) {
                                 return a.objective < b.objective;
                               });
  return run;
}

OptimizationRun optimize_ringdown(const MeasurementEmulator& em, double amp_dn1, double amp_dn2,
                                  const SimplexSettings& settings) {
  return optimize_generic(em, {"amp_dn1", "amp_dn2"}, {amp_dn1, amp_dn2}, settings);
}

}  // namespace clearkit::optim
