#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "clearkit/cavity.hpp"
#include "clearkit/design.hpp"
#include "clearkit/io.hpp"
#include "clearkit/optim.hpp"
#include "clearkit/ramsey.hpp"

// Batch pipelines, one per measurement of the reset study.
namespace clearkit::experiments {

enum class Scenario {
  DecaySweep,
  PowerSweep,
  TrajectoryCompare,
  ClearVsSquare,
  ShortenedClear,
  OptimizeRun,
  RamseySingle,
};

Scenario parse_scenario(const std::string& name);
std::string to_string(Scenario s);
const std::vector<std::string>& scenario_names();

/// Prepared-state admixture applied to averaged field trajectories.
struct ThermalMix {
  double p_excited_thermal = 0.0;

  void validate() const;
  /// (1 - p) alpha_prepared + p alpha_other
  cplx measured(cplx prepared, cplx other) const {
    return (1.0 - p_excited_thermal) * prepared + p_excited_thermal * other;
  }
};

/// Every scenario knob. Times in us internally; `--set` keys use the units
/// in their names.
struct Settings {
  double p_norm = 2.0;
  std::vector<double> p_norm_grid{0.25, 0.5, 1, 2, 4, 6, 8, 10};
  std::vector<double> t_relax_grid{0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7};
  double t_relax = 0.04;
  double t_m1 = 2.0;    ///< ring-up plus flat; square pulses use the same drive length
  double t_up = 0.15;   ///< each ring-up segment
  double t_dn = 0.15;   ///< each ring-down segment
  bool kerr = false;
  double noise_sigma = 0.01;
  double ramsey_detuning_mhz = 10.0;
  int ramsey_points = 61;
  double ramsey_t_max = 0.6;
  double thermal_p = 0.2;
  double sample_interval = 0.024;
  int max_iterations = 300;
  double f_tol = 1e-3;
  optim::Scalarization scalarization = optim::Scalarization::Max;
  optim::NoisePolicy noise_policy = optim::NoisePolicy::Fresh;
  double n0 = 0.9;
  double phi0 = 0.3;
  double threshold = 0.01;  ///< photons, for the speedup metric
  std::uint64_t seed = 1;

  ramsey::RamseyConfig ramsey_config(const SystemParams& p, std::uint64_t seed) const;
  design::ClearSpec clear_spec(const cavity::DriveCalibration& cal, double p_norm) const;
};

/// Scenario defaults (drive power, segment lengths, Kerr flag).
Settings default_settings(Scenario s);

/// Applies `key=value` overrides. Throws ConfigError naming any unknown key.
void apply_override(Settings& s, const std::string& key, const std::string& value);
const std::vector<std::string>& settings_keys();
nlohmann::json settings_to_json(const Settings& s);

/// Synthesize a probe trace for `n_true` photons and fit it.
ramsey::FitResult measure_n0(const SystemParams& p, const Settings& s, double n_true,
                             std::uint64_t seed);

/// Seed for sweep point `index`, branch `branch`, stream `stream`.
std::uint64_t point_seed(const Settings& s, std::size_t index, int branch, int stream = 0);

struct DecaySweepResult {
  io::Table table;  ///< t_relax_us,n_true_g,n_true_e,n0_g,n0_e
  /// Absent when fewer than 3 points are above the fit floor.
  std::optional<ramsey::DecayFit> fit_ground, fit_excited;
};
DecaySweepResult run_decay_sweep(const SystemParams& p, const Settings& s);

struct PowerSweepResult {
  /// p_norm,n_linear_ref,n_kerr_model_g,n_kerr_model_e,n_true_g,n_true_e,n0_g,n0_e,bistable_g,bistable_e
  io::Table table;
};
PowerSweepResult run_power_sweep(const SystemParams& p, const Settings& s);

struct TrajectoryCompareResult {
  cavity::Trajectory square, clear;                  // pure branches
  cavity::Trajectory square_measured, clear_measured;  // thermally mixed
};
TrajectoryCompareResult run_trajectory_compare(const SystemParams& p, const Settings& s);
cavity::Trajectory apply_thermal_mix(const cavity::Trajectory& tr, const ThermalMix& mix);

struct ClearVsSquareResult {
  /// p_norm,n_true_clear_g,n_true_clear_e,n_true_square_g,n_true_square_e,
  /// n0_clear_g,n0_clear_e,n0_square_g,n0_square_e,speedup_us
  io::Table table;
};
ClearVsSquareResult run_clear_vs_square(const SystemParams& p, const Settings& s);

/// Time after the end of a square drive for free decay from n_end to reach
/// `threshold`, minus the CLEAR ring-down duration.
double speedup(double n_end, double kappa, double threshold, double ringdown_duration);

struct ShortenedClearResult {
  io::Table table;  ///< p_norm,n_true_g,n_true_e,n0_g,n0_e
};
ShortenedClearResult run_shortened_clear(const SystemParams& p, const Settings& s);

struct OptimizeResult {
  optim::OptimizationRun run;
  design::ClearDesign initial;  ///< linear-model design used as the starting point
  design::ClearSpec final_spec;
  ramsey::RamseyTrace before_ground, before_excited, after_ground, after_excited;
  ramsey::FitResult fit_before_ground, fit_before_excited, fit_after_ground, fit_after_excited;
};
OptimizeResult run_optimize(const SystemParams& p, const Settings& s);
optim::MeasurementEmulator make_emulator(const SystemParams& p, const Settings& s,
                                         const design::ClearSpec& base);
io::Table history_table(const optim::OptimizationRun& run);

struct RamseySingleResult {
  ramsey::RamseyTrace trace;
  ramsey::FitResult fit;
};
RamseySingleResult run_ramsey_single(const SystemParams& p, const Settings& s);

/// Design summary: multipliers, durations, eps_steady, condition numbers and
/// predicted linear residuals |alpha(T)|^2 per branch.
nlohmann::json design_json(const SystemParams& p, const design::ClearDesign& d, double p_norm);

/// Runs a scenario and writes its CSV/JSON artifacts and manifest.json into
/// out_dir. Returns the written file names (manifest last).
std::vector<std::string> run_scenario(Scenario sc, const nlohmann::json& device_input,
                                      const Settings& s, const std::filesystem::path& out_dir);

}  // namespace clearkit::experiments
