#include "clearkit/device_io.hpp"

#include <algorithm>
#include <fstream>

#include "clearkit/design.hpp"
#include "clearkit/error.hpp"
#include "clearkit/units.hpp"

namespace clearkit {

using nlohmann::json;

const std::vector<std::string>& device_keys() {
  static const std::vector<std::string> keys{
      "kappa_mhz",         "chi_mhz",           "kerr_khz",   "f_qubit_ghz", "f_cavity_dressed_ghz",
      "f_cavity_bare_ghz", "anharmonicity_mhz", "t2_echo_us", "g_mhz"};
  return keys;
}

DeviceConfig parse_device(const json& j) {
  if (!j.is_object()) throw ConfigError("device parameters must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (std::find(device_keys().begin(), device_keys().end(), key) == device_keys().end())
      throw ConfigError("unknown device parameter key '" + key + "'");
    if (!value.is_number()) throw ConfigError("device parameter '" + key + "' must be a number");
  }
  auto need = [&](const char* key) {
    if (!j.contains(key)) throw ConfigError(std::string("missing device parameter '") + key + "'");
    return j.at(key).get<double>();
  };

  DeviceConfig out;
  auto& p = out.params;
  p.kappa = units::convert_frequency(need("kappa_mhz"));
  p.chi = units::convert_frequency(need("chi_mhz"));
  p.f_qubit = need("f_qubit_ghz");
  p.f_cavity_dressed = need("f_cavity_dressed_ghz");
  p.f_cavity_bare = need("f_cavity_bare_ghz");
  p.anharmonicity = units::convert_frequency(need("anharmonicity_mhz"));
  const double t2 = need("t2_echo_us");
  if (!(t2 > 0.0)) throw ConfigError("t2_echo_us must be positive");
  p.gamma2 = 1.0 / t2;

  if (j.contains("g_mhz")) {
    p.g = units::convert_frequency(j.at("g_mhz").get<double>());
  } else {
    p.g = design::derive_g(p);
    out.g_derived = true;
  }
  if (j.contains("kerr_khz")) {
    p.kerr = units::khz_to_rad_per_us(j.at("kerr_khz").get<double>());
  } else {
    p.kerr = design::kerr_constant(p);
    out.kerr_derived = true;
  }
  out.warnings = validate(p);
  return out;
}

DeviceConfig load_device(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open device file " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ConfigError("device file " + path.string() + " is not valid JSON: " + e.what());
  }
  return parse_device(j);
}

json device_to_json(const SystemParams& p) {
  return {{"kappa_mhz", units::to_mhz(p.kappa)},
          {"chi_mhz", units::to_mhz(p.chi)},
          {"kerr_khz", units::to_khz(p.kerr)},
          {"f_qubit_ghz", p.f_qubit},
          {"f_cavity_dressed_ghz", p.f_cavity_dressed},
          {"f_cavity_bare_ghz", p.f_cavity_bare},
          {"anharmonicity_mhz", units::to_mhz(p.anharmonicity)},
          {"t2_echo_us", 1.0 / p.gamma2},
          {"g_mhz", units::to_mhz(p.g)}};
}

json reference_device_json() {
  return {{"kappa_mhz", 1.1},
          {"chi_mhz", -1.3},
          {"kerr_khz", -14.0},
          {"f_qubit_ghz", 4.83315},
          {"f_cavity_dressed_ghz", 10.7594},
          {"f_cavity_bare_ghz", 10.7457},
          {"anharmonicity_mhz", -155.0},
          {"t2_echo_us", 60.0}};
}

}  // namespace clearkit
