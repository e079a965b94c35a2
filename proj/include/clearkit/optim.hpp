#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "clearkit/design.hpp"
#include "clearkit/ramsey.hpp"
#include "clearkit/simplex.hpp"

// Hardware-in-the-loop style tuning of CLEAR parameters, with the cavity
// simulator and a Ramsey fit standing in for the device.
namespace clearkit::optim {

enum class NoisePolicy { Fresh, Frozen };
enum class Scalarization { Max, Mean };

struct MeasurementEmulator {
  SystemParams params;
  design::ClearSpec base;  ///< must be complete
  bool kerr_enabled = true;
  ramsey::RamseyConfig ramsey;  ///< noise_sigma lives here; rng_seed is the base seed
  NoisePolicy noise = NoisePolicy::Fresh;
  Scalarization scalarization = Scalarization::Max;
};

/// Objective reported when a fit fails or a trial is not physical.
inline constexpr double kFailedObjective = 1e3;

struct Evaluation {
  double n0_ground = 0.0;
  double n0_excited = 0.0;
  double objective = 0.0;
  double true_ground = 0.0;   ///< |alpha|^2 at pulse end
  double true_excited = 0.0;
  bool flagged = false;
};

/// Seed of the Ramsey noise for evaluation `index` and branch `s`.
std::uint64_t evaluation_seed(const MeasurementEmulator& em, int index, QubitState s);

/// Synthesized probe trace for one branch of a complete spec.
ramsey::RamseyTrace measure_trace(const MeasurementEmulator& em, const design::ClearSpec& spec,
                                  QubitState s, int index);

Evaluation evaluate_spec(const MeasurementEmulator& em, const design::ClearSpec& spec,
                         int index = 0);

/// Replaces the ring-down multipliers of the base spec and measures n0 on
/// both branches at t_relax = 0.
Evaluation evaluate_ringdown(const MeasurementEmulator& em, double amp_dn1, double amp_dn2,
                             int index = 0);

struct TrialRecord {
  int iteration = 0;
  std::vector<double> parameters;
  double objective = 0.0;
  double n0_ground = 0.0;
  double n0_excited = 0.0;
  bool flagged = false;
};

struct OptimizationRun {
  std::vector<std::string> names;
  std::vector<TrialRecord> history;
  TrialRecord best;
  SimplexSettings settings;
  std::uint64_t rng_seed = 0;
  bool converged = false;

  /// Base spec with the best parameters substituted.
  design::ClearSpec best_spec(const design::ClearSpec& base) const;
};

/// Names accepted by optimize_generic.
const std::vector<std::string>& tunable_parameters();

/// Writes `value` into the named ClearSpec field. Throws ConfigError on an
/// unknown name.
void set_parameter(design::ClearSpec& spec, const std::string& name, double value);
double get_parameter(const design::ClearSpec& spec, const std::string& name);

OptimizationRun optimize_generic(const MeasurementEmulator& em,
                                 const std::vector<std::string>& names,
                                 const std::vector<double>& initial,
                                 const SimplexSettings& settings = {});

OptimizationRun optimize_ringdown(const MeasurementEmulator& em, double amp_dn1, double amp_dn2,
                                  const SimplexSettings& settings = {});

}  // namespace clearkit::optim
