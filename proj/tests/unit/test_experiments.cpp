#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>

#include "clearkit/error.hpp"
#include "clearkit/experiments.hpp"
#include "clearkit/units.hpp"
#include "test_util.hpp"

using namespace clearkit;
using namespace clearkit::experiments;
namespace fs = std::filesystem;

namespace {

std::vector<double> column(const io::Table& t, const std::string& name) {
  const auto it = std::find(t.columns.begin(), t.columns.end(), name);
  EXPECT_NE(it, t.columns.end()) << name;
  const auto k = static_cast<std::size_t>(it - t.columns.begin());
  std::vector<double> out;
  for (const auto& r : t.rows) out.push_back(r.at(k));
  return out;
}

fs::path scratch_dir(const std::string& name) {
  const auto d = fs::temp_directory_path() / ("clearkit_test_" + name);
  fs::remove_all(d);
  return d;
}

}  // namespace

TEST(Scenarios, NamesRoundTrip) {
  for (const auto& n : scenario_names()) EXPECT_EQ(to_string(parse_scenario(n)), n);
  EXPECT_THROW(parse_scenario("fig5"), ConfigError);
}

TEST(Settings, OverridesUseUnitsInKeyNames) {
  auto s = default_settings(Scenario::ClearVsSquare);
  apply_override(s, "t_dn_ns", "120");
  apply_override(s, "p_norm_grid", "1,2.5,4");
  apply_override(s, "kerr", "false");
  apply_override(s, "scalarization", "mean");
  EXPECT_DOUBLE_EQ(s.t_dn, 0.12);
  EXPECT_EQ(s.p_norm_grid, (std::vector<double>{1, 2.5, 4}));
  EXPECT_FALSE(s.kerr);
  EXPECT_EQ(s.scalarization, optim::Scalarization::Mean);
  EXPECT_EQ(settings_to_json(s)["t_dn_us"], 0.12);
}

TEST(Settings, BadOverridesRejected) {
  auto s = default_settings(Scenario::DecaySweep);
  try {
    apply_override(s, "kapa", "1");
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("kapa"), std::string::npos);
  }
  EXPECT_THROW(apply_override(s, "p_norm", "lots"), ConfigError);
  EXPECT_THROW(apply_override(s, "noise_policy", "stale"), ConfigError);
  EXPECT_THROW(apply_override(s, "kerr", "maybe"), ConfigError);
}

TEST(Settings, ScenarioDefaults) {
  EXPECT_FALSE(default_settings(Scenario::DecaySweep).kerr);
  EXPECT_TRUE(default_settings(Scenario::PowerSweep).kerr);
  EXPECT_DOUBLE_EQ(default_settings(Scenario::TrajectoryCompare).p_norm, 3.6);
  EXPECT_DOUBLE_EQ(default_settings(Scenario::ShortenedClear).t_dn, 0.12);
  const auto o = default_settings(Scenario::OptimizeRun);
  EXPECT_DOUBLE_EQ(o.p_norm, 10.0);
  EXPECT_DOUBLE_EQ(o.t_dn, 0.12);
  EXPECT_TRUE(o.kerr);
}

TEST(DecaySweep, RecoversCavityDecay) {
  const auto p = fixtures::device();
  const auto s = default_settings(Scenario::DecaySweep);
  const auto r = run_decay_sweep(p, s);
  ASSERT_EQ(r.table.rows.size(), 8u);
  ASSERT_TRUE(r.fit_ground && r.fit_excited);
  EXPECT_NEAR(r.fit_ground->rate, p.kappa, 0.02 * p.kappa);
  EXPECT_NEAR(r.fit_excited->rate, p.kappa, 0.02 * p.kappa);
  const auto n_true = column(r.table, "n_true_g");
  EXPECT_NEAR(r.fit_ground->amplitude, n_true[0], 0.05 * n_true[0]);
  // both branches agree within their uncertainties
  EXPECT_LT(std::abs(r.fit_ground->rate - r.fit_excited->rate),
            3 * std::hypot(r.fit_ground->rate_stderr, r.fit_excited->rate_stderr) + 1e-9);
  // 2 photons after 0.6 us
  EXPECT_NEAR(n_true[6], 2.0 * std::exp(-p.kappa * 0.6), 1e-3);
  EXPECT_NEAR(1.0 / p.kappa, 0.1447, 1e-4);
}

TEST(DecaySweep, NoDriveGivesNoFit) {
  auto s = default_settings(Scenario::DecaySweep);
  s.p_norm = 1e-8;
  s.noise_sigma = 0.0;
  const auto r = run_decay_sweep(fixtures::device(), s);
  EXPECT_FALSE(r.fit_ground.has_value());
  EXPECT_EQ(r.table.rows.size(), 8u);
  s.p_norm = 0.0;
  EXPECT_THROW(run_decay_sweep(fixtures::device(), s), ConfigError);
}

TEST(PowerSweep, KerrOrdering) {
  const auto p = fixtures::device();
  const auto r = run_power_sweep(p, default_settings(Scenario::PowerSweep));
  const auto pn = column(r.table, "p_norm"), lin = column(r.table, "n_linear_ref");
  const auto g = column(r.table, "n0_g"), e = column(r.table, "n0_e");
  for (std::size_t i = 0; i < pn.size(); ++i) {
    if (pn[i] >= 4) {
      EXPECT_GT(g[i], lin[i]) << pn[i];
      EXPECT_LT(e[i], lin[i]) << pn[i];
    }
    if (pn[i] <= 1) {
      EXPECT_NEAR(g[i], lin[i], 0.03 * lin[i]) << pn[i];
      EXPECT_NEAR(e[i], lin[i], 0.03 * lin[i]) << pn[i];
    }
  }
}

TEST(ThermalMix, Identity) {
  const auto p = fixtures::device();
  auto s = default_settings(Scenario::TrajectoryCompare);
  s.thermal_p = 0.0;
  const auto r = run_trajectory_compare(p, s);
  EXPECT_EQ(r.clear_measured.ground, r.clear.ground);
  EXPECT_EQ(r.square_measured.excited, r.square.excited);
}

TEST(ThermalMix, ShrinksSeparation) {
  const auto p = fixtures::device();
  const auto r = run_trajectory_compare(p, default_settings(Scenario::TrajectoryCompare));
  for (std::size_t i = 0; i < r.square.size(); ++i) {
    const double pure = std::abs(r.square.ground[i] - r.square.excited[i]);
    const double mixed = std::abs(r.square_measured.ground[i] - r.square_measured.excited[i]);
    EXPECT_NEAR(mixed, 0.6 * pure, 1e-12);
  }
  EXPECT_THROW(ThermalMix{1.5}.validate(), ConfigError);
}

TEST(TrajectoryCompare, ClearEndsEmptySquareDoesNot) {
  const auto r = run_trajectory_compare(fixtures::device(),
                                        default_settings(Scenario::TrajectoryCompare));
  EXPECT_LT(std::abs(r.clear.ground.back()), 1e-9);
  EXPECT_GT(std::norm(r.square.ground.back()), 0.3);
  EXPECT_NEAR(r.clear.times.back(), r.square.times.back(), 1e-12);
}

TEST(ClearVsSquare, LinearRegime) {
  const auto p = fixtures::device();
  auto s = default_settings(Scenario::ClearVsSquare);
  s.kerr = false;
  const auto r = run_clear_vs_square(p, s);
  const auto pn = column(r.table, "p_norm");
  const auto cg = column(r.table, "n_true_clear_g"), sq = column(r.table, "n_true_square_e");
  const auto n0c = column(r.table, "n0_clear_g"), sp = column(r.table, "speedup_us");
  for (std::size_t i = 0; i < pn.size(); ++i) {
    EXPECT_LT(cg[i], 1e-6);
    EXPECT_NEAR(sq[i], pn[i] * std::exp(-p.kappa * 0.3), 1e-3 * pn[i]);
    EXPECT_LT(n0c[i], 0.05);
    EXPECT_NEAR(sp[i], std::log(pn[i] / 0.01) / p.kappa - 0.3, 1e-3);
  }
}

TEST(ClearVsSquare, SpeedupFormula) {
  const double k = units::convert_frequency(1.1);
  EXPECT_NEAR(speedup(1.0, k, 0.01, 0.3), std::log(100.0) / k - 0.3, 1e-15);
  EXPECT_DOUBLE_EQ(speedup(0.001, k, 0.01, 0.3), -0.3);
}

TEST(ShortenedClear, KerrResidualGrowsWithPower) {
  const auto r = run_shortened_clear(fixtures::device(), default_settings(Scenario::ShortenedClear));
  const auto g = column(r.table, "n_true_g");
  EXPECT_LT(g.front(), g.back());
  EXPECT_GT(g.back(), 0.1);
}

TEST(Optimize, ImprovesOnLinearDesign) {
  auto s = default_settings(Scenario::OptimizeRun);
  s.max_iterations = 60;
  const auto r = run_optimize(fixtures::device(), s);
  EXPECT_EQ(r.run.history.front().objective,
            std::max(r.fit_before_ground.n0, r.fit_before_excited.n0));
  EXPECT_LT(std::max(r.fit_after_ground.n0, r.fit_after_excited.n0),
            std::max(r.fit_before_ground.n0, r.fit_before_excited.n0));
  EXPECT_EQ(*r.final_spec.amp_dn1, r.run.best.parameters[0]);
  EXPECT_EQ(history_table(r.run).columns,
            (std::vector<std::string>{"iter", "amp_dn1", "amp_dn2", "n0_g", "n0_e", "objective"}));
}

TEST(RamseySingle, FitsConfiguredPopulation) {
  const auto r = run_ramsey_single(fixtures::device(), default_settings(Scenario::RamseySingle));
  EXPECT_NEAR(r.fit.n0, 0.9, 0.05 * 0.9);
}

TEST(RunScenario, ByteIdenticalReruns) {
  auto device = reference_device_json();
  for (auto sc : {Scenario::RamseySingle, Scenario::DecaySweep, Scenario::TrajectoryCompare,
                  Scenario::OptimizeRun}) {
    auto s = default_settings(sc);
    s.max_iterations = 10;
    const auto a = scratch_dir(to_string(sc) + "_a"), b = scratch_dir(to_string(sc) + "_b");
    const auto files = run_scenario(sc, device, s, a);
    const auto again = run_scenario(sc, device, s, b);
    ASSERT_EQ(files, again);
    EXPECT_EQ(files.back(), "manifest.json");
    for (const auto& f : files) EXPECT_EQ(io::read_text(a / f), io::read_text(b / f)) << f;
    fs::remove_all(a);
    fs::remove_all(b);
  }
}

TEST(RunScenario, SeedChangesNoisyOutput) {
  auto device = reference_device_json();
  auto s = default_settings(Scenario::RamseySingle);
  const auto a = scratch_dir("seed_a"), b = scratch_dir("seed_b");
  run_scenario(Scenario::RamseySingle, device, s, a);
  s.seed = 2;
  run_scenario(Scenario::RamseySingle, device, s, b);
  EXPECT_NE(io::read_text(a / "ramsey_trace.csv"), io::read_text(b / "ramsey_trace.csv"));
  const auto manifest = nlohmann::json::parse(io::read_text(a / "manifest.json"));
  EXPECT_TRUE(manifest.contains("config_hash"));
  EXPECT_TRUE(manifest["files"].contains("ramsey_trace.csv"));
  fs::remove_all(a);
  fs::remove_all(b);
}

TEST(Io, CsvFormatAndTraceParsing) {
  io::Table t{{"t_r_us", "signal"}, {}};
  t.add({0.1, 1.0 / 3.0});
  const auto text = io::to_csv(t, {"hello"});
  EXPECT_EQ(text, "# hello\nt_r_us,signal\n0.10000000000000001,0.33333333333333331\n");
  const auto back = io::parse_trace_csv(text);
  EXPECT_EQ(back.t_R, std::vector<double>{0.1});
  EXPECT_EQ(back.signal, std::vector<double>{1.0 / 3.0});
  EXPECT_THROW(io::parse_trace_csv("t,s\n0,1\n"), ConfigError);
  EXPECT_THROW(t.add({1.0}), std::exception);
  EXPECT_EQ(io::hex64(io::fnv1a64("")), "cbf29ce484222325");
}
