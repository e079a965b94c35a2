#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "clearkit/params.hpp"

namespace clearkit {

/// Device parameters together with provenance of derived constants.
struct DeviceConfig {
  SystemParams params;
  bool g_derived = false;
  bool kerr_derived = false;
  std::vector<std::string> warnings;
};

/// Keys accepted in a device-parameter file.
const std::vector<std::string>& device_keys();

/// Parses a device-parameter object. Ordinary frequencies: kappa_mhz,
/// chi_mhz (half-pull), kerr_khz (optional), f_qubit_ghz,
/// f_cavity_dressed_ghz, f_cavity_bare_ghz, anharmonicity_mhz, t2_echo_us,
/// g_mhz (optional). Missing g/kerr are derived. Unknown keys throw
/// ConfigError naming the key.
DeviceConfig parse_device(const nlohmann::json& j);
DeviceConfig load_device(const std::filesystem::path& path);

/// The device in ordinary units, including derived constants.
nlohmann::json device_to_json(const SystemParams& p);

/// Device file contents for the reference transmon, with the reported self-Kerr
/// of -14 kHz.
nlohmann::json reference_device_json();

}  // namespace clearkit
