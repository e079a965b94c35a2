// clearkit command line: scenario runner plus design / ramsey-fit / simulate.
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "clearkit/cavity.hpp"
#include "clearkit/design.hpp"
#include "clearkit/device_io.hpp"
#include "clearkit/error.hpp"
#include "clearkit/experiments.hpp"
#include "clearkit/io.hpp"
#include "clearkit/ramsey.hpp"

using namespace clearkit;
using nlohmann::json;

namespace {

struct Common {
  std::string params;
  std::vector<std::string> sets;
  std::string out;
  long long seed = -1;
};

bool is_device_key(const std::string& k) {
  for (const auto& d : device_keys())
    if (d == k) return true;
  return false;
}

// Device JSON and scenario settings after --params, --set and --seed.
std::pair<json, experiments::Settings> configure(const Common& c, experiments::Settings s) {
  json device = c.params.empty() ? reference_device_json() : json::parse(io::read_text(c.params),
                                                                        nullptr, false);
  if (device.is_discarded()) throw ConfigError("cannot parse device file " + c.params);
  for (const auto& kv : c.sets) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0) throw ConfigError("--set expects key=value, got '" + kv + "'");
    const std::string key = kv.substr(0, eq), value = kv.substr(eq + 1);
    if (is_device_key(key)) {
      try {
        std::size_t used = 0;
        const double v = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        device[key] = v;
      } catch (const std::logic_error&) {
        throw ConfigError("device key '" + key + "' needs a number, got '" + value + "'");
      }
    } else {
      experiments::apply_override(s, key, value);
    }
  }
  if (c.seed >= 0) s.seed = static_cast<std::uint64_t>(c.seed);
  return {device, s};
}

SystemParams load_params(const json& device) {
  const auto dev = parse_device(device);
  for (const auto& w : dev.warnings) std::cerr << "warning: " << w << "\n";
  return dev.params;
}

void add_common(CLI::App* app, Common& c, bool with_out) {
  app->add_option("--params", c.params, "device JSON (default: built-in reference device)");
  app->add_option("--set", c.sets, "override, key=value (device or scenario key)")->take_all();
  if (with_out) app->add_option("--out", c.out, "output directory (default: $CLEARKIT_OUT or ./out)");
  app->add_option("--seed", c.seed, "base RNG seed");
}

int run(int argc, char** argv) {
  CLI::App app{"CLEAR readout-cavity reset toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "clearkit 0.1.0");

  Common common;
  std::string scenario_name;
  for (const auto& name : experiments::scenario_names()) {
    auto* sub = app.add_subcommand(name, "run the " + name + " scenario");
    add_common(sub, common, true);
    sub->callback([&scenario_name, name] { scenario_name = name; });
  }
  auto* opt_alias = app.add_subcommand("optimize", "alias of optimize_run");
  add_common(opt_alias, common, true);
  opt_alias->callback([&scenario_name] { scenario_name = "optimize_run"; });

  auto* design_cmd = app.add_subcommand("design", "solve a CLEAR pulse and print it as JSON");
  add_common(design_cmd, common, false);

  std::string trace_path;
  auto* fit_cmd = app.add_subcommand("ramsey-fit", "fit n0 and phi0 to a t_r_us,signal CSV");
  fit_cmd->add_option("trace", trace_path, "trace CSV")->required();
  add_common(fit_cmd, common, false);

  std::string shape = "clear";
  auto* sim_cmd = app.add_subcommand("simulate", "print a pulse trajectory CSV");
  sim_cmd->add_option("--pulse", shape, "clear or square")->check(CLI::IsMember({"clear", "square"}));
  add_common(sim_cmd, common, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (!scenario_name.empty()) {
    const auto sc = experiments::parse_scenario(scenario_name);
    const auto [device, s] = configure(common, experiments::default_settings(sc));
    load_params(device);  // validation and warnings before any work
    std::string out = common.out;
    if (out.empty()) {
      const char* env = std::getenv("CLEARKIT_OUT");
      out = env && *env ? env : "out";
    }
    for (const auto& f : experiments::run_scenario(sc, device, s, out))
      std::cout << out << "/" << f << "\n";
    return 0;
  }

  if (design_cmd->parsed()) {
    const auto [device, s] = configure(common, experiments::Settings{});
    const auto p = load_params(device);
    const auto cal = cavity::calibrate_drive(p);
    const auto d = design::resolve_clear_spec(p, s.clear_spec(cal, s.p_norm));
    std::cout << experiments::design_json(p, d, s.p_norm).dump(2) << "\n";
    return 0;
  }

  if (fit_cmd->parsed()) {
    const auto [device, s] = configure(common, experiments::Settings{});
    const auto p = load_params(device);
    const auto samples = io::read_trace_csv(trace_path);
    ramsey::RamseyTrace trace{samples.t_R, samples.signal, s.ramsey_config(p, 0)};
    trace.config.t_grid = samples.t_R;
    std::cout << io::fit_to_json(ramsey::fit_ramsey(trace, p)).dump(2) << "\n";
    return 0;
  }

  if (sim_cmd->parsed()) {
    const auto [device, s] = configure(common, experiments::Settings{});
    const auto p = load_params(device);
    const auto cal = cavity::calibrate_drive(p);
    const auto spec = s.clear_spec(cal, s.p_norm);
    const auto pulse = shape == "clear"
                           ? design::make_clear_pulse(p, spec)
                           : design::make_square_pulse(spec.eps_steady, s.t_m1, spec.t_dn1 + spec.t_dn2);
    const auto tr = cavity::simulate_pulse(p, pulse, {s.kerr, s.sample_interval});
    std::cout << io::to_csv(io::trajectory_table(tr), {"clearkit simulate " + shape});
    return 0;
  }
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
