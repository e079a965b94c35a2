#pragma once

#include <cstdint>
#include <vector>

#include "clearkit/params.hpp"
#include "clearkit/pulse.hpp"

// Transient Ramsey probe of residual cavity photons:
//   S(t) = 1/2 [1 - Im exp(-(gamma2 + i Delta) t + i (phi0 - 2 n0 chi tau))]
//   tau  = (1 - exp(-(kappa + 2 i chi) t)) / (kappa + 2 i chi)
namespace clearkit::ramsey {

struct RamseyConfig {
  double detuning = 0.0;  ///< Ramsey detuning Delta, rad/us
  double gamma2 = 0.0;    ///< 1/us
  std::vector<double> t_grid;  ///< us, strictly increasing, >= 0
  double noise_sigma = 0.0;
  std::uint64_t rng_seed = 0;

  void validate() const;
};

/// 10 MHz detuning, 61 points over 0-600 ns, gamma2 from the device.
RamseyConfig default_config(const SystemParams& p, double noise_sigma = 0.0,
                            std::uint64_t seed = 0);

std::vector<double> uniform_grid(double t_max, std::size_t points);

struct RamseyTrace {
  std::vector<double> t_R;
  std::vector<double> signal;
  RamseyConfig config;
};

struct FitResult {
  double n0 = 0.0;
  double phi0 = 0.0;  ///< wrapped to (-pi, pi]
  double residual_norm = 0.0;  ///< L2 norm of the residual vector
  int iterations = 0;
  bool converged = false;
  double n0_stderr = 0.0;
  double phi0_stderr = 0.0;
};

/// Photon memory factor tau(t).
cplx photon_memory(const SystemParams& p, double t_R);

double ramsey_signal(double n0, double phi0, const SystemParams& p, const RamseyConfig& cfg,
                     double t_R);

/// Model over the config grid plus seeded additive Gaussian noise (no clamping).
RamseyTrace synthesize_trace(double n0, double phi0, const SystemParams& p,
                             const RamseyConfig& cfg);

/// Least-squares fit of (n0, phi0) with kappa, chi, gamma2 and Delta fixed.
/// Multi-start over phi0 in {k pi/4} and n0 in {0.01, 0.1, 1, 3, 10}.
FitResult fit_ramsey(const RamseyTrace& trace, const SystemParams& p);

double wrap_phase(double phi);

struct DecayFit {
  double amplitude = 0.0;  ///< n0 at t = 0
  double rate = 0.0;       ///< 1/us
  double rate_stderr = 0.0;
  double r_squared = 0.0;  ///< weighted, in log space
  std::size_t used = 0;
  std::size_t excluded = 0;  ///< points at or below the floor
};

struct DecayPoint {
  double t = 0.0;
  double n0 = 0.0;
};

/// Log-linear least squares on log n0 vs t with weights n0^2 (inverse
/// variance of log n0 under constant absolute error). Throws NumericalError
/// with fewer than 3 usable points or duplicate times.
DecayFit fit_exponential_decay(const std::vector<DecayPoint>& points, double floor = 1e-3);

}  // namespace clearkit::ramsey
