#include "clearkit/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <sstream>
#include <thread>

#include "clearkit/device_io.hpp"
#include "clearkit/error.hpp"
#include "clearkit/rng.hpp"
#include "clearkit/units.hpp"

namespace clearkit::experiments {
namespace {

using nlohmann::json;

constexpr const char* kVersion = "0.1.0";

// Runs f(0..n-1) on a small thread pool; results are gathered by index.
template <class F>
auto parallel_map(std::size_t n, F&& f) -> std::vector<decltype(f(std::size_t{}))> {
  using R = decltype(f(std::size_t{}));
  std::vector<R> out(n);
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        out[i] = f(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t threads =
      std::min<std::size_t>(n, std::max(1u, std::thread::hardware_concurrency()));
  std::vector<std::jthread> pool;
  for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  pool.clear();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

std::vector<double> parse_list(const std::string& key, const std::string& v) {
  std::vector<double> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ConfigError("setting '" + key + "' expects a comma-separated list of numbers");
    }
  }
  if (out.empty()) throw ConfigError("setting '" + key + "' must not be empty");
  return out;
}

double parse_number(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const double x = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ConfigError("setting '" + key + "' expects a number, got '" + v + "'");
  }
}

bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "1" || v == "true" || v == "on" || v == "yes") return true;
  if (v == "0" || v == "false" || v == "off" || v == "no") return false;
  throw ConfigError("setting '" + key + "' expects true/false, got '" + v + "'");
}

cplx end_amplitude(const SystemParams& p, const PulseEnvelope& pulse, QubitState st, bool kerr) {
  return cavity::final_amplitude(p, pulse, st, kerr);
}

}  // namespace

const std::vector<std::string>& scenario_names() {
  static const std::vector<std::string> names{"decay_sweep",     "power_sweep",
                                              "trajectory_compare", "clear_vs_square",
                                              "shortened_clear", "optimize_run",
                                              "ramsey_single"};
  return names;
}

Scenario parse_scenario(const std::string& name) {
  const auto& n = scenario_names();
  const auto it = std::find(n.begin(), n.end(), name);
  if (it == n.end()) throw ConfigError("unknown scenario '" + name + "'");
  return static_cast<Scenario>(it - n.begin());
}

std::string to_string(Scenario s) { return scenario_names()[static_cast<std::size_t>(s)]; }

void ThermalMix::validate() const {
  if (!(p_excited_thermal >= 0.0 && p_excited_thermal <= 1.0))
    throw ConfigError("thermal population must lie in [0, 1]");
}

ramsey::RamseyConfig Settings::ramsey_config(const SystemParams& p, std::uint64_t rng_seed) const {
  if (ramsey_points < 8) throw ConfigError("ramsey_points must be at least 8");
  ramsey::RamseyConfig cfg{units::convert_frequency(ramsey_detuning_mhz), p.gamma2,
                           ramsey::uniform_grid(ramsey_t_max, static_cast<std::size_t>(ramsey_points)),
                           noise_sigma, rng_seed};
  cfg.validate();
  return cfg;
}

design::ClearSpec Settings::clear_spec(const cavity::DriveCalibration& cal, double pn) const {
  design::ClearSpec spec;
  spec.eps_steady = cal.eps_for(pn);
  spec.t_up1 = spec.t_up2 = t_up;
  spec.t_dn1 = spec.t_dn2 = t_dn;
  spec.t_flat = t_m1 - 2.0 * t_up;
  if (spec.t_flat < 0.0) throw ConfigError("t_m1_us must cover both ring-up segments");
  return spec;
}

Settings default_settings(Scenario sc) {
  Settings s;
  switch (sc) {
    case Scenario::DecaySweep:
      s.p_norm = 2.0;
      break;
    case Scenario::PowerSweep:
      s.kerr = true;
      break;
    case Scenario::TrajectoryCompare:
      s.p_norm = 3.6;
      break;
    case Scenario::ClearVsSquare:
      s.p_norm_grid = {0.5, 1, 2, 4, 6, 8, 10};
      s.kerr = true;
      break;
    case Scenario::ShortenedClear:
      s.p_norm_grid = {0.5, 1, 2, 4, 6, 8, 10};
      s.t_dn = 0.12;
      s.kerr = true;
      break;
    case Scenario::OptimizeRun:
      s.p_norm = 10.0;
      s.t_dn = 0.12;
      s.kerr = true;
      break;
    case Scenario::RamseySingle:
      break;
  }
  return s;
}

const std::vector<std::string>& settings_keys() {
  static const std::vector<std::string> keys{
      "p_norm",        "p_norm_grid",    "t_relax_grid_us",     "t_relax_ns",   "t_m1_us",
      "t_up_ns",       "t_dn_ns",        "kerr",                "noise_sigma",  "ramsey_detuning_mhz",
      "ramsey_points", "ramsey_t_max_ns", "thermal_p",          "sample_interval_ns",
      "max_iterations", "f_tol",         "scalarization",       "noise_policy", "n0",
      "phi0",          "threshold",      "seed"};
  return keys;
}

void apply_override(Settings& s, const std::string& key, const std::string& v) {
  auto num = [&] { return parse_number(key, v); };
  if (key == "p_norm") s.p_norm = num();
  else if (key == "p_norm_grid") s.p_norm_grid = parse_list(key, v);
  else if (key == "t_relax_grid_us") s.t_relax_grid = parse_list(key, v);
  else if (key == "t_relax_ns") s.t_relax = units::ns_to_us(num());
  else if (key == "t_m1_us") s.t_m1 = num();
  else if (key == "t_up_ns") s.t_up = units::ns_to_us(num());
  else if (key == "t_dn_ns") s.t_dn = units::ns_to_us(num());
  else if (key == "kerr") s.kerr = parse_bool(key, v);
  else if (key == "noise_sigma") s.noise_sigma = num();
  else if (key == "ramsey_detuning_mhz") s.ramsey_detuning_mhz = num();
  else if (key == "ramsey_points") s.ramsey_points = static_cast<int>(num());
  else if (key == "ramsey_t_max_ns") s.ramsey_t_max = units::ns_to_us(num());
  else if (key == "thermal_p") s.thermal_p = num();
  else if (key == "sample_interval_ns") s.sample_interval = units::ns_to_us(num());
  else if (key == "max_iterations") s.max_iterations = static_cast<int>(num());
  else if (key == "f_tol") s.f_tol = num();
  else if (key == "n0") s.n0 = num();
  else if (key == "phi0") s.phi0 = num();
  else if (key == "threshold") s.threshold = num();
  else if (key == "seed") s.seed = static_cast<std::uint64_t>(num());
  else if (key == "scalarization") {
    if (v == "max") s.scalarization = optim::Scalarization::Max;
    else if (v == "mean") s.scalarization = optim::Scalarization::Mean;
    else throw ConfigError("scalarization must be 'max' or 'mean'");
  } else if (key == "noise_policy") {
    if (v == "fresh") s.noise_policy = optim::NoisePolicy::Fresh;
    else if (v == "frozen") s.noise_policy = optim::NoisePolicy::Frozen;
    else throw ConfigError("noise_policy must be 'fresh' or 'frozen'");
  } else {
    throw ConfigError("unknown setting '" + key + "'");
  }
}

json settings_to_json(const Settings& s) {
  return {{"p_norm", s.p_norm},
          {"p_norm_grid", s.p_norm_grid},
          {"t_relax_grid_us", s.t_relax_grid},
          {"t_relax_us", s.t_relax},
          {"t_m1_us", s.t_m1},
          {"t_up_us", s.t_up},
          {"t_dn_us", s.t_dn},
          {"kerr", s.kerr},
          {"noise_sigma", s.noise_sigma},
          {"ramsey_detuning_mhz", s.ramsey_detuning_mhz},
          {"ramsey_points", s.ramsey_points},
          {"ramsey_t_max_us", s.ramsey_t_max},
          {"thermal_p", s.thermal_p},
          {"sample_interval_us", s.sample_interval},
          {"max_iterations", s.max_iterations},
          {"f_tol", s.f_tol},
          {"scalarization", s.scalarization == optim::Scalarization::Max ? "max" : "mean"},
          {"noise_policy", s.noise_policy == optim::NoisePolicy::Fresh ? "fresh" : "frozen"},
          {"n0", s.n0},
          {"phi0", s.phi0},
          {"threshold", s.threshold},
          {"seed", s.seed}};
}

std::uint64_t point_seed(const Settings& s, std::size_t index, int branch, int stream) {
  return derive_seed(derive_seed(s.seed, static_cast<std::uint64_t>(stream)), index,
                     static_cast<std::uint64_t>(branch));
}

ramsey::FitResult measure_n0(const SystemParams& p, const Settings& s, double n_true,
                             std::uint64_t seed) {
  const auto trace = ramsey::synthesize_trace(n_true, 0.0, p, s.ramsey_config(p, seed));
  return ramsey::fit_ramsey(trace, p);
}

DecaySweepResult run_decay_sweep(const SystemParams& p, const Settings& s) {
  if (!(s.p_norm > 0.0)) throw ConfigError("p_norm must be positive");
  const auto cal = cavity::calibrate_drive(p);
  const auto square = design::make_square_pulse(cal.eps_for(s.p_norm), s.t_m1, 0.0);
  const double n_g = std::norm(end_amplitude(p, square, QubitState::Ground, s.kerr));
  const double n_e = std::norm(end_amplitude(p, square, QubitState::Excited, s.kerr));

  const auto rows = parallel_map(s.t_relax_grid.size(), [&](std::size_t i) {
    const double t = s.t_relax_grid[i];
    if (t < 0.0) throw ConfigError("t_relax values must be non-negative");
    const double tg = cavity::free_decay(n_g, p.kappa, t);
    const double te = cavity::free_decay(n_e, p.kappa, t);
    const auto fg = measure_n0(p, s, tg, point_seed(s, i, 0));
    const auto fe = measure_n0(p, s, te, point_seed(s, i, 1));
    return std::vector<double>{t, tg, te, fg.n0, fe.n0};
  });

  DecaySweepResult out{{{"t_relax_us", "n_true_g", "n_true_e", "n0_g", "n0_e"}, {}}, {}, {}};
  std::vector<ramsey::DecayPoint> pg, pe;
  for (const auto& r : rows) {
    out.table.add(r);
    pg.push_back({r[0], r[3]});
    pe.push_back({r[0], r[4]});
  }
  auto fit = [](const std::vector<ramsey::DecayPoint>& pts) -> std::optional<ramsey::DecayFit> {
    try {
      return ramsey::fit_exponential_decay(pts);
    } catch (const NumericalError&) {
      return std::nullopt;
    }
  };
  out.fit_ground = fit(pg);
  out.fit_excited = fit(pe);
  return out;
}

PowerSweepResult run_power_sweep(const SystemParams& p, const Settings& s) {
  const auto cal = cavity::calibrate_drive(p);
  const double decay = std::exp(-p.kappa * s.t_relax);
  const auto rows = parallel_map(s.p_norm_grid.size(), [&](std::size_t i) {
    const double pn = s.p_norm_grid[i];
    if (!(pn > 0.0)) throw ConfigError("p_norm_grid values must be positive");
    const double eps = cal.eps_for(pn);
    const auto kg = cavity::steady_state_kerr(p, eps, QubitState::Ground);
    const auto ke = cavity::steady_state_kerr(p, eps, QubitState::Excited);
    const double tg = decay * (s.kerr ? kg.photons : pn);
    const double te = decay * (s.kerr ? ke.photons : pn);
    const auto fg = measure_n0(p, s, tg, point_seed(s, i, 0));
    const auto fe = measure_n0(p, s, te, point_seed(s, i, 1));
    return std::vector<double>{pn,     decay * pn, decay * kg.photons, decay * ke.photons, tg, te,
                               fg.n0,  fe.n0,      kg.bistable ? 1.0 : 0.0,
                               ke.bistable ? 1.0 : 0.0};
  });
  PowerSweepResult out{{{"p_norm", "n_linear_ref", "n_kerr_model_g", "n_kerr_model_e", "n_true_g",
                         "n_true_e", "n0_g", "n0_e", "bistable_g", "bistable_e"},
                        {}}};
  for (const auto& r : rows) out.table.add(r);
  return out;
}

cavity::Trajectory apply_thermal_mix(const cavity::Trajectory& tr, const ThermalMix& mix) {
  mix.validate();
  cavity::Trajectory out = tr;
  for (std::size_t i = 0; i < tr.size(); ++i) {
    out.ground[i] = mix.measured(tr.ground[i], tr.excited[i]);
    out.excited[i] = mix.measured(tr.excited[i], tr.ground[i]);
  }
  return out;
}

TrajectoryCompareResult run_trajectory_compare(const SystemParams& p, const Settings& s) {
  const auto cal = cavity::calibrate_drive(p);
  const auto spec = s.clear_spec(cal, s.p_norm);
  const auto clear = design::make_clear_pulse(p, spec);
  const auto square = design::make_square_pulse(spec.eps_steady, s.t_m1, spec.t_dn1 + spec.t_dn2);
  const cavity::SimulationOptions opt{s.kerr, s.sample_interval};
  const ThermalMix mix{s.thermal_p};

  TrajectoryCompareResult out;
  out.square = cavity::simulate_pulse(p, square, opt);
  out.clear = cavity::simulate_pulse(p, clear, opt);
  out.square_measured = apply_thermal_mix(out.square, mix);
  out.clear_measured = apply_thermal_mix(out.clear, mix);
  return out;
}

double speedup(double n_end, double kappa, double threshold, double ringdown_duration) {
  const double t_cross = n_end > threshold ? std::log(n_end / threshold) / kappa : 0.0;
  return t_cross - ringdown_duration;
}

ClearVsSquareResult run_clear_vs_square(const SystemParams& p, const Settings& s) {
  const auto cal = cavity::calibrate_drive(p);
  const auto rows = parallel_map(s.p_norm_grid.size(), [&](std::size_t i) {
    const double pn = s.p_norm_grid[i];
    if (!(pn > 0.0)) throw ConfigError("p_norm_grid values must be positive");
    const auto spec = s.clear_spec(cal, pn);
    const double ringdown = spec.t_dn1 + spec.t_dn2;
    const auto clear = design::make_clear_pulse(p, spec);
    const auto drive = design::make_square_pulse(spec.eps_steady, s.t_m1, 0.0);
    const auto square = design::make_square_pulse(spec.eps_steady, s.t_m1, ringdown);

    std::vector<double> row{pn};
    std::vector<double> truth;
    for (const auto* pulse : {&clear, &square})
      for (QubitState st : kBothStates)
        truth.push_back(std::norm(end_amplitude(p, *pulse, st, s.kerr)));
    row.insert(row.end(), truth.begin(), truth.end());
    for (std::size_t k = 0; k < truth.size(); ++k)
      row.push_back(measure_n0(p, s, truth[k], point_seed(s, i, static_cast<int>(k))).n0);
    const double n_drive_end = std::max(std::norm(end_amplitude(p, drive, QubitState::Ground, s.kerr)),
                                        std::norm(end_amplitude(p, drive, QubitState::Excited, s.kerr)));
    row.push_back(speedup(n_drive_end, p.kappa, s.threshold, ringdown));
    return row;
  });
  ClearVsSquareResult out{{{"p_norm", "n_true_clear_g", "n_true_clear_e", "n_true_square_g",
                            "n_true_square_e", "n0_clear_g", "n0_clear_e", "n0_square_g",
                            "n0_square_e", "speedup_us"},
                           {}}};
  for (const auto& r : rows) out.table.add(r);
  return out;
}

ShortenedClearResult run_shortened_clear(const SystemParams& p, const Settings& s) {
  const auto cal = cavity::calibrate_drive(p);
  const auto rows = parallel_map(s.p_norm_grid.size(), [&](std::size_t i) {
    const double pn = s.p_norm_grid[i];
    if (!(pn > 0.0)) throw ConfigError("p_norm_grid values must be positive");
    const auto clear = design::make_clear_pulse(p, s.clear_spec(cal, pn));
    const double tg = std::norm(end_amplitude(p, clear, QubitState::Ground, s.kerr));
    const double te = std::norm(end_amplitude(p, clear, QubitState::Excited, s.kerr));
    return std::vector<double>{pn, tg, te, measure_n0(p, s, tg, point_seed(s, i, 0)).n0,
                               measure_n0(p, s, te, point_seed(s, i, 1)).n0};
  });
  ShortenedClearResult out{{{"p_norm", "n_true_g", "n_true_e", "n0_g", "n0_e"}, {}}};
  for (const auto& r : rows) out.table.add(r);
  return out;
}

optim::MeasurementEmulator make_emulator(const SystemParams& p, const Settings& s,
                                         const design::ClearSpec& base) {
  optim::MeasurementEmulator em;
  em.params = p;
  em.base = base;
  em.kerr_enabled = s.kerr;
  em.ramsey = s.ramsey_config(p, derive_seed(s.seed, 0x6f7074));
  em.noise = s.noise_policy;
  em.scalarization = s.scalarization;
  return em;
}

io::Table history_table(const optim::OptimizationRun& run) {
  io::Table t;
  t.columns.push_back("iter");
  for (const auto& n : run.names) t.columns.push_back(n);
  for (const char* c : {"n0_g", "n0_e", "objective"}) t.columns.push_back(c);
  for (const auto& h : run.history) {
    std::vector<double> row{static_cast<double>(h.iteration)};
    row.insert(row.end(), h.parameters.begin(), h.parameters.end());
    row.insert(row.end(), {h.n0_ground, h.n0_excited, h.objective});
    t.add(std::move(row));
  }
  return t;
}

OptimizeResult run_optimize(const SystemParams& p, const Settings& s) {
  const auto cal = cavity::calibrate_drive(p);
  OptimizeResult out;
  out.initial = design::resolve_clear_spec(p, s.clear_spec(cal, s.p_norm));
  const auto em = make_emulator(p, s, out.initial.spec);

  optim::SimplexSettings st;
  st.max_evaluations = s.max_iterations;
  st.f_tol = s.f_tol;
  out.run = optim::optimize_ringdown(em, *out.initial.spec.amp_dn1, *out.initial.spec.amp_dn2, st);
  out.final_spec = out.run.best_spec(em.base);

  // the first history entry is the starting point, so reuse its noise draws
  out.before_ground = optim::measure_trace(em, out.initial.spec, QubitState::Ground, 0);
  out.before_excited = optim::measure_trace(em, out.initial.spec, QubitState::Excited, 0);
  out.after_ground = optim::measure_trace(em, out.final_spec, QubitState::Ground, out.run.best.iteration);
  out.after_excited =
      optim::measure_trace(em, out.final_spec, QubitState::Excited, out.run.best.iteration);
  out.fit_before_ground = ramsey::fit_ramsey(out.before_ground, p);
  out.fit_before_excited = ramsey::fit_ramsey(out.before_excited, p);
  out.fit_after_ground = ramsey::fit_ramsey(out.after_ground, p);
  out.fit_after_excited = ramsey::fit_ramsey(out.after_excited, p);
  return out;
}

RamseySingleResult run_ramsey_single(const SystemParams& p, const Settings& s) {
  RamseySingleResult out;
  out.trace = ramsey::synthesize_trace(s.n0, s.phi0, p, s.ramsey_config(p, point_seed(s, 0, 0)));
  out.fit = ramsey::fit_ramsey(out.trace, p);
  return out;
}

json design_json(const SystemParams& p, const design::ClearDesign& d, double p_norm) {
  const auto& s = d.spec;
  const auto pulse = design::make_clear_pulse(p, s);
  const double rg = std::norm(cavity::final_amplitude(p, pulse, QubitState::Ground, false));
  const double re = std::norm(cavity::final_amplitude(p, pulse, QubitState::Excited, false));
  return {{"p_norm", p_norm},
          {"eps_steady", s.eps_steady},
          {"t_up1_us", s.t_up1},
          {"t_up2_us", s.t_up2},
          {"t_flat_us", s.t_flat},
          {"t_dn1_us", s.t_dn1},
          {"t_dn2_us", s.t_dn2},
          {"amp_up1", s.amp_up1.value_or(0.0)},
          {"amp_up2", s.amp_up2.value_or(0.0)},
          {"amp_dn1", s.amp_dn1.value_or(0.0)},
          {"amp_dn2", s.amp_dn2.value_or(0.0)},
          {"condition_number_up", d.condition_up},
          {"condition_number_down", d.condition_down},
          {"predicted_residual_g", rg},
          {"predicted_residual_e", re}};
}

std::vector<std::string> run_scenario(Scenario sc, const json& device_input, const Settings& s,
                                      const std::filesystem::path& out_dir) {
  const auto dev = parse_device(device_input);
  const auto& p = dev.params;

  json config{{"scenario", to_string(sc)},
              {"settings", settings_to_json(s)},
              {"device", device_to_json(p)},
              {"seed", s.seed}};
  const std::string config_hash = io::hex64(io::fnv1a64(config.dump()));
  const std::vector<std::string> comments{
      std::string("clearkit ") + kVersion + " scenario " + to_string(sc),
      "config_hash " + config_hash};

  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw ConfigError("cannot create output directory " + out_dir.string());

  std::vector<std::pair<std::string, std::string>> files;
  auto csv = [&](const std::string& name, const io::Table& t) {
    files.emplace_back(name, io::to_csv(t, comments));
  };
  auto js = [&](const std::string& name, const json& j) { files.emplace_back(name, j.dump(2) + "\n"); };
  auto decay_json = [](const std::optional<ramsey::DecayFit>& opt) {
    if (!opt) return json(nullptr);
    const auto& f = *opt;
    return json{{"amplitude", f.amplitude}, {"rate", f.rate},       {"rate_stderr", f.rate_stderr},
                {"t_cav_us", 1.0 / f.rate}, {"r_squared", f.r_squared}, {"used", f.used},
                {"excluded", f.excluded}};
  };

  switch (sc) {
    case Scenario::DecaySweep: {
      const auto r = run_decay_sweep(p, s);
      csv("decay_sweep.csv", r.table);
      js("decay_fit.json", {{"kappa", p.kappa},
                            {"t_cav_us", p.t_cav()},
                            {"ground", decay_json(r.fit_ground)},
                            {"excited", decay_json(r.fit_excited)}});
      break;
    }
    case Scenario::PowerSweep:
      csv("power_sweep.csv", run_power_sweep(p, s).table);
      break;
    case Scenario::TrajectoryCompare: {
      const auto r = run_trajectory_compare(p, s);
      csv("square_trajectory.csv", io::trajectory_table(r.square));
      csv("clear_trajectory.csv", io::trajectory_table(r.clear));
      csv("square_measured.csv", io::trajectory_table(r.square_measured));
      csv("clear_measured.csv", io::trajectory_table(r.clear_measured));
      break;
    }
    case Scenario::ClearVsSquare:
      csv("clear_vs_square.csv", run_clear_vs_square(p, s).table);
      break;
    case Scenario::ShortenedClear:
      csv("shortened_clear.csv", run_shortened_clear(p, s).table);
      break;
    case Scenario::OptimizeRun: {
      const auto r = run_optimize(p, s);
      csv("history.csv", history_table(r.run));
      csv("before_ground.csv", io::trace_table(r.before_ground));
      csv("before_excited.csv", io::trace_table(r.before_excited));
      csv("after_ground.csv", io::trace_table(r.after_ground));
      csv("after_excited.csv", io::trace_table(r.after_excited));
      auto final_design = r.initial;
      final_design.spec = r.final_spec;
      js("final_spec.json", design_json(p, final_design, s.p_norm));
      js("summary.json", {{"evaluations", r.run.history.size()},
                          {"converged", r.run.converged},
                          {"best_objective", r.run.best.objective},
                          {"best_iteration", r.run.best.iteration},
                          {"initial_amp_dn", {*r.initial.spec.amp_dn1, *r.initial.spec.amp_dn2}},
                          {"final_amp_dn", {*r.final_spec.amp_dn1, *r.final_spec.amp_dn2}},
                          {"fit_before_ground", io::fit_to_json(r.fit_before_ground)},
                          {"fit_before_excited", io::fit_to_json(r.fit_before_excited)},
                          {"fit_after_ground", io::fit_to_json(r.fit_after_ground)},
                          {"fit_after_excited", io::fit_to_json(r.fit_after_excited)}});
      break;
    }
    case Scenario::RamseySingle: {
      const auto r = run_ramsey_single(p, s);
      csv("ramsey_trace.csv", io::trace_table(r.trace));
      js("ramsey_fit.json", io::fit_to_json(r.fit));
      break;
    }
  }

  json manifest = config;
  manifest["tool"] = "clearkit";
  manifest["version"] = kVersion;
  manifest["config_hash"] = config_hash;
  manifest["device_input"] = device_input;
  manifest["derived"] = {{"g", dev.g_derived}, {"kerr", dev.kerr_derived}};
  std::vector<std::string> names;
  for (const auto& [name, text] : files) {
    io::write_text(out_dir / name, text);
    manifest["files"][name] = io::hex64(io::fnv1a64(text));
    names.push_back(name);
  }
  io::write_text(out_dir / "manifest.json", manifest.dump(2) + "\n");
  names.push_back("manifest.json");
  return names;
}

}  // namespace clearkit::experiments
