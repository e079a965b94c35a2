#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "clearkit/device_io.hpp"
#include "clearkit/error.hpp"
#include "clearkit/params.hpp"
#include "clearkit/pulse.hpp"
#include "clearkit/units.hpp"
#include "test_util.hpp"

using namespace clearkit;

TEST(Core, DetuningAtMidpointCarrier) {
  auto p = reference_device();
  const double two_pi = 2.0 * M_PI;
  EXPECT_NEAR(detuning_for_state(p, QubitState::Ground), two_pi * 1.3, 1e-12);
  EXPECT_NEAR(detuning_for_state(p, QubitState::Excited), -two_pi * 1.3, 1e-12);
  p.chi = 0.0;
  EXPECT_EQ(detuning_for_state(p, QubitState::Ground), 0.0);
  EXPECT_EQ(detuning_for_state(p, QubitState::Excited), 0.0);
}

TEST(Core, DetuningsCancelExactly) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> chi(-50.0, 50.0);
  auto p = reference_device();
  for (int i = 0; i < 200; ++i) {
    p.chi = chi(rng);
    EXPECT_EQ(detuning_for_state(p, QubitState::Ground) + detuning_for_state(p, QubitState::Excited),
              0.0);
  }
}

TEST(Core, ConvertFrequency) {
  EXPECT_NEAR(units::convert_frequency(1.1), 6.9115, 5e-5);
  EXPECT_EQ(units::convert_frequency(0.0), 0.0);
  EXPECT_NEAR(units::convert_frequency(-1.3), -8.1681, 5e-5);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> x(-1e4, 1e4);
  for (int i = 0; i < 1000; ++i) {
    const double v = x(rng);
    EXPECT_NEAR(units::to_mhz(units::convert_frequency(v)), v, 4 * std::abs(v) * 1e-16);
  }
}

TEST(Core, CavityTimeConstant) {
  EXPECT_NEAR(reference_device().t_cav(), 0.1447, 1e-4);
}

TEST(Core, ValidateRejectsHardViolationsAndWarnsOnSigns) {
  auto p = reference_device();
  EXPECT_TRUE(validate(p).empty());
  p.chi = 1.0;
  p.kerr = 0.1;
  EXPECT_EQ(validate(p).size(), 2u);
  p = reference_device();
  p.kappa = 0.0;
  EXPECT_THROW(validate(p), ConfigError);
  p = reference_device();
  p.gamma2 = -1.0;
  EXPECT_THROW(validate(p), ConfigError);
  p = reference_device();
  p.chi = NAN;
  EXPECT_THROW(validate(p), ConfigError);
}

TEST(Core, PulseEnvelopeInvariants) {
  EXPECT_THROW(PulseEnvelope({}, "empty"), ConfigError);
  EXPECT_THROW(PulseEnvelope({{0.0, 1.0}}, "zero"), ConfigError);
  EXPECT_THROW(PulseEnvelope({{0.1, cplx(INFINITY, 0)}}, "inf"), ConfigError);
  PulseEnvelope env({{0.1, 1.0}, {0.25, 0.0}, {0.05, -2.0}}, "x");
  EXPECT_DOUBLE_EQ(env.total_duration(), 0.4);
  const auto b = env.boundaries();
  ASSERT_EQ(b.size(), 4u);
  EXPECT_DOUBLE_EQ(b[1], 0.1);
  EXPECT_DOUBLE_EQ(b.back(), env.total_duration());
}

TEST(Core, SequenceTimingDefaultsAndValidation) {
  SequenceTiming t;
  EXPECT_DOUBLE_EQ(t.t_buffer, 0.4);
  EXPECT_NO_THROW(t.validate());
  t.t_relax = -0.1;
  EXPECT_THROW(t.validate(), ConfigError);
}

TEST(DeviceFile, ParsesAndDerivesMissingConstants) {
  auto j = reference_device_json();
  j.erase("kerr_khz");
  const auto dev = parse_device(j);
  EXPECT_TRUE(dev.g_derived);
  EXPECT_TRUE(dev.kerr_derived);
  EXPECT_NEAR(units::to_mhz(dev.params.g), 549.8, 0.5);
  EXPECT_NEAR(dev.params.gamma2, 1.0 / 60.0, 1e-15);

  const auto ref = parse_device(reference_device_json());
  EXPECT_FALSE(ref.kerr_derived);
  EXPECT_NEAR(units::to_khz(ref.params.kerr), -14.0, 1e-12);
}

TEST(DeviceFile, UnknownKeyIsNamed) {
  auto j = reference_device_json();
  j["kapa_mhz"] = 1.0;
  try {
    parse_device(j);
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("kapa_mhz"), std::string::npos);
  }
}

TEST(DeviceFile, MissingRequiredKey) {
  auto j = reference_device_json();
  j.erase("chi_mhz");
  EXPECT_THROW(parse_device(j), ConfigError);
}

TEST(DeviceFile, RoundTripThroughOrdinaryUnits) {
  const auto p = fixtures::device();
  const auto back = parse_device(device_to_json(p)).params;
  EXPECT_NEAR(back.kappa, p.kappa, 1e-12);
  EXPECT_NEAR(back.chi, p.chi, 1e-12);
  EXPECT_NEAR(back.kerr, p.kerr, 1e-15);
  EXPECT_NEAR(back.g, p.g, 1e-9);
  EXPECT_NEAR(back.anharmonicity, p.anharmonicity, 1e-9);
}
