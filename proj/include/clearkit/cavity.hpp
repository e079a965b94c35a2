#pragma once

#include <complex>
#include <vector>

#include "clearkit/params.hpp"
#include "clearkit/pulse.hpp"

// Classical intracavity field in the drive frame:
//   d(alpha)/dt = -i(delta + K|alpha|^2) alpha - (kappa/2) alpha - i eps(t)
namespace clearkit::cavity {

/// Time-sampled cavity amplitude for both qubit branches.
struct Trajectory {
  std::vector<double> times;
  std::vector<cplx> ground;
  std::vector<cplx> excited;
  double sample_interval = 0.0;

  const std::vector<cplx>& branch(QubitState s) const {
    return s == QubitState::Ground ? ground : excited;
  }
  double photons(QubitState s, std::size_t i) const { return std::norm(branch(s)[i]); }
  std::size_t size() const { return times.size(); }
};

/// Drive strength giving one steady-state photon at the midpoint carrier.
struct DriveCalibration {
  double eps_one_photon = 0.0;

  double p_norm_of(double eps) const { return eps * eps / (eps_one_photon * eps_one_photon); }
  double eps_for(double p_norm) const;
};

/// Steady state of the linear oscillator, -i eps / (i delta + kappa/2).
cplx steady_state_linear(double delta, double kappa, cplx eps);

/// Exact linear propagation over a constant-drive interval of length t.
cplx propagate_linear(cplx alpha0, double delta, double kappa, cplx eps, double t);

/// Largest RK4 step accepted by propagate_kerr: min(0.02/kappa, 0.02/|delta|).
double max_kerr_step(double delta, double kappa);
/// min(1/(50 kappa), 1/(50 |delta|), 1 ns).
double default_kerr_step(double delta, double kappa);

/// Fixed-step RK4 over [0, t]; the step is shrunk so that it divides t evenly.
/// Throws ConfigError if dt exceeds max_kerr_step.
cplx propagate_kerr(cplx alpha0, double delta, double kappa, double kerr, cplx eps, double t,
                    double dt);

struct SimulationOptions {
  bool kerr_enabled = false;
  double sample_interval = 0.024;  ///< us
  double kerr_step = 0.0;          ///< RK4 step; 0 selects default_kerr_step
};

/// Samples both branches from an empty cavity. The time grid holds every
/// multiple of sample_interval inside the pulse plus every segment boundary.
Trajectory simulate_pulse(const SystemParams& p, const PulseEnvelope& pulse,
                          const SimulationOptions& opt);

/// Single-branch variant; times are written to `times` if non-null.
std::vector<cplx> simulate_branch(const SystemParams& p, const PulseEnvelope& pulse, QubitState s,
                                  const SimulationOptions& opt, std::vector<double>* times = nullptr);

/// Amplitude at the end of the pulse, starting from alpha0.
cplx final_amplitude(const SystemParams& p, const PulseEnvelope& pulse, QubitState s,
                     bool kerr_enabled, cplx alpha0 = {}, double kerr_step = 0.0);

struct KerrSteadyState {
  double photons = 0.0;
  bool bistable = false;  ///< more than one physical root at this drive
};

/// Physical root of n[(delta + K n)^2 + kappa^2/4] = eps^2 on the branch
/// connected to eps = 0.
KerrSteadyState steady_state_kerr(const SystemParams& p, double eps, QubitState s);

double free_decay(double n0, double kappa, double t);

DriveCalibration calibrate_drive(const SystemParams& p);

/// ac Stark shift of the qubit, 2 chi n.
double stark_shift(double n, double chi);

}  // namespace clearkit::cavity
