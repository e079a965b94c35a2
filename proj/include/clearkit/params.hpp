#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace clearkit {

enum class QubitState { Ground, Excited };

inline constexpr QubitState kBothStates[] = {QubitState::Ground, QubitState::Excited};

std::string_view to_string(QubitState s);
QubitState other(QubitState s);

/// Device constants. Angular frequencies in rad/us, ordinary frequencies in
/// GHz, rates in 1/us.
struct SystemParams {
  double kappa = 0.0;          ///< cavity energy decay rate
  double chi = 0.0;            ///< half the dispersive cavity pull
  double kerr = 0.0;           ///< self-Kerr shift per photon
  double g = 0.0;              ///< qubit-cavity coupling
  double f_qubit = 0.0;        ///< GHz
  double f_cavity_dressed = 0.0;  ///< GHz
  double f_cavity_bare = 0.0;     ///< GHz
  double anharmonicity = 0.0;  ///< transmon anharmonicity, negative
  double gamma2 = 0.0;         ///< 1/T2 echo

  double t_cav() const { return 1.0 / kappa; }
};

/// Throws ConfigError on hard violations (kappa <= 0, gamma2 < 0, non-finite
/// values). Returns soft warnings for sign conventions that differ from the
/// usual transmon regime (chi < 0, kerr < 0).
std::vector<std::string> validate(const SystemParams& p);

/// Rotating-frame cavity detuning for a qubit branch with the drive at the
/// midpoint carrier: -chi for Ground, +chi for Excited.
double detuning_for_state(const SystemParams& p, QubitState s);

/// Device used throughout the examples and defaults: 3D transmon at
/// 10.7594 GHz dressed, kappa/2pi = 1.1 MHz, 2chi/2pi = -2.6 MHz.
/// g and kerr are left at zero; see design::with_derived_constants.
SystemParams reference_device();

}  // namespace clearkit
