#include "clearkit/params.hpp"

#include <cmath>

#include "clearkit/error.hpp"
#include "clearkit/units.hpp"

namespace clearkit {

std::string_view to_string(QubitState s) {
  return s == QubitState::Ground ? "ground" : "excited";
}

QubitState other(QubitState s) {
  return s == QubitState::Ground ? QubitState::Excited : QubitState::Ground;
}

std::vector<std::string> validate(const SystemParams& p) {
  const double all[] = {p.kappa,         p.chi,  p.kerr, p.g, p.f_qubit, p.f_cavity_dressed,
                        p.f_cavity_bare, p.anharmonicity, p.gamma2};
  for (double v : all) {
    if (!std::isfinite(v)) throw ConfigError("device parameters must be finite");
  }
  if (!(p.kappa > 0.0)) throw ConfigError("kappa must be positive");
  if (p.gamma2 < 0.0) throw ConfigError("gamma2 must be non-negative");

  std::vector<std::string> warnings;
  if (p.chi >= 0.0) warnings.emplace_back("chi >= 0: outside the usual transmon regime (chi < 0)");
  if (p.kerr > 0.0) warnings.emplace_back("kerr > 0: outside the usual transmon regime (kerr < 0)");
  return warnings;
}

double detuning_for_state(const SystemParams& p, QubitState s) {
  return s == QubitState::Ground ? -p.chi : p.chi;
}

SystemParams reference_device() {
  SystemParams p;
  p.kappa = units::convert_frequency(1.1);
  p.chi = units::convert_frequency(-1.3);
  p.f_qubit = 4.83315;
  p.f_cavity_dressed = 10.7594;
  p.f_cavity_bare = 10.7457;
  p.anharmonicity = units::convert_frequency(-155.0);
  p.gamma2 = 1.0 / 60.0;
  return p;
}

}  // namespace clearkit
