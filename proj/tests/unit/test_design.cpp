#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "clearkit/cavity.hpp"
#include "clearkit/design.hpp"
#include "clearkit/error.hpp"
#include "clearkit/units.hpp"
#include "test_util.hpp"

using namespace clearkit;
using namespace clearkit::design;

namespace {

cplx run_branch(const SystemParams& p, const std::vector<PulseSegment>& segs, QubitState s,
                cplx start) {
  return cavity::final_amplitude(p, PulseEnvelope(segs, "test"), s, false, start);
}

ClearSpec spec_at(const SystemParams& p, double p_norm) {
  ClearSpec s;
  s.eps_steady = cavity::calibrate_drive(p).eps_for(p_norm);
  return s;
}

}  // namespace

TEST(SolveSegmentPair, VacuumToVacuumNeedsNoDrive) {
  const auto r = solve_segment_pair(fixtures::device(), 0.15, 0.15, 0.0, 0.0);
  EXPECT_EQ(r.eps1, 0.0);
  EXPECT_EQ(r.eps2, 0.0);
}

TEST(SolveSegmentPair, RingUpAndRingDownAreExact) {
  const auto p = fixtures::device();
  const double eps = cavity::calibrate_drive(p).eps_for(3.6);
  const cplx steady = cavity::steady_state_linear(-p.chi, p.kappa, eps);
  const auto up = solve_segment_pair(p, 0.15, 0.15, 0.0, steady);
  const auto dn = solve_segment_pair(p, 0.15, 0.15, steady, 0.0);
  const std::vector<PulseSegment> up_segs{{0.15, up.eps1}, {0.15, up.eps2}};
  const std::vector<PulseSegment> dn_segs{{0.15, dn.eps1}, {0.15, dn.eps2}};
  EXPECT_LT(std::abs(run_branch(p, up_segs, QubitState::Ground, 0.0) - steady), 1e-12);
  EXPECT_LT(std::abs(run_branch(p, up_segs, QubitState::Excited, 0.0) + std::conj(steady)), 1e-12);
  EXPECT_LT(std::abs(run_branch(p, dn_segs, QubitState::Ground, steady)), 1e-12);
  EXPECT_LT(std::abs(run_branch(p, dn_segs, QubitState::Excited, -std::conj(steady))), 1e-12);
  EXPECT_LT(up.condition_number, 1e3);
  EXPECT_LT(dn.condition_number, 1e3);
}

TEST(SolveSegmentPair, DegenerateWithoutDispersiveShift) {
  auto p = fixtures::device();
  p.chi = 0.0;
  // real drive on a resonant cavity only reaches the imaginary axis
  EXPECT_THROW(solve_segment_pair(p, 0.15, 0.15, 0.0, cplx(1.0, 0.0)), SingularSystemError);
  try {
    solve_segment_pair(p, 0.15, 0.15, 0.0, cplx(1.0, 0.0));
  } catch (const SingularSystemError& e) {
    EXPECT_GT(e.condition_number(), kMaxConditionNumber);
    EXPECT_NE(std::string(e.what()).find("condition number"), std::string::npos);
  }
  EXPECT_THROW(solve_segment_pair(p, 0.0, 0.15, 0.0, 1.0), ConfigError);
}

TEST(SolveSegmentPair, RandomEndpointsAreExact) {
  const auto p = fixtures::device();
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-3.0, 3.0), dur(0.05, 0.4);
  for (int i = 0; i < 200; ++i) {
    const cplx a(u(rng), u(rng)), b(u(rng), u(rng));
    const double t1 = dur(rng), t2 = dur(rng);
    const auto r = solve_segment_pair(p, t1, t2, a, b);
    const std::vector<PulseSegment> segs{{t1, r.eps1}, {t2, r.eps2}};
    const double scale = std::max({1.0, std::abs(a), std::abs(b)});
    EXPECT_LT(std::abs(run_branch(p, segs, QubitState::Ground, a) - b) / scale, 1e-9);
    EXPECT_LT(std::abs(run_branch(p, segs, QubitState::Excited, -std::conj(a)) + std::conj(b)) / scale,
              1e-9);
  }
}

TEST(SolveSegmentPairComplex, MatchesRealSolverAtMidpoint) {
  const auto p = fixtures::device();
  const cplx steady = cavity::steady_state_linear(-p.chi, p.kappa, 20.0);
  const auto real = solve_segment_pair(p, 0.12, 0.12, steady, 0.0);
  const auto cx = solve_segment_pair_complex(p.kappa, -p.chi, p.chi, 0.12, 0.12, steady, 0.0,
                                             -std::conj(steady), 0.0);
  EXPECT_NEAR(cx.eps1.real(), real.eps1, 1e-9 * std::abs(real.eps1));
  EXPECT_NEAR(cx.eps2.real(), real.eps2, 1e-9 * std::abs(real.eps2));
  EXPECT_NEAR(cx.eps1.imag(), 0.0, 1e-9 * std::abs(real.eps1));
}

TEST(SolveSegmentPairComplex, OffsetCarrierResetsBothBranches) {
  const auto p = fixtures::device();
  const double shift = units::convert_frequency(0.4);
  const double dg = -p.chi + shift, de = p.chi + shift;
  const cplx eps = 15.0;
  const cplx sg = cavity::steady_state_linear(dg, p.kappa, eps);
  const cplx se = cavity::steady_state_linear(de, p.kappa, eps);
  const auto r = solve_segment_pair_complex(p.kappa, dg, de, 0.15, 0.15, sg, 0.0, se, 0.0);
  for (auto [d, s] : {std::pair{dg, sg}, std::pair{de, se}}) {
    const cplx mid = cavity::propagate_linear(s, d, p.kappa, r.eps1, 0.15);
    EXPECT_LT(std::abs(cavity::propagate_linear(mid, d, p.kappa, r.eps2, 0.15)), 1e-10);
  }
}

TEST(ClearPulse, ReferenceDesignAtThreePointSixPhotons) {
  const auto p = fixtures::device();
  const auto spec = spec_at(p, 3.6);
  const auto pulse = make_clear_pulse(p, spec);
  ASSERT_EQ(pulse.size(), 5u);
  EXPECT_NEAR(pulse.total_duration(), 2.3, 1e-12);
  // end of ring-up sits on the steady state; Kerr moves it by a few percent
  const PulseEnvelope up({pulse.segments()[0], pulse.segments()[1]}, "up");
  for (auto s : kBothStates) {
    EXPECT_NEAR(std::norm(cavity::final_amplitude(p, up, s, false)), 3.6, 1e-9);
    EXPECT_NEAR(std::norm(cavity::final_amplitude(p, up, s, true)), 3.6, 0.05 * 3.6);
    EXPECT_LT(std::abs(cavity::final_amplitude(p, pulse, s, false)), 1e-9);
  }
  // ring-down opposes the field: first ring-down segment is negative
  EXPECT_LT(pulse.segments()[3].amplitude.real(), 0.0);
  EXPECT_GT(pulse.segments()[0].amplitude.real(), spec.eps_steady);
}

TEST(ClearPulse, ShortenedRingDownIsResolved) {
  const auto p = fixtures::device();
  auto spec = spec_at(p, 3.6);
  spec.t_dn1 = spec.t_dn2 = 0.12;
  const auto d150 = resolve_clear_spec(p, spec_at(p, 3.6));
  const auto d120 = resolve_clear_spec(p, spec);
  EXPECT_NE(*d150.spec.amp_dn1, *d120.spec.amp_dn1);
  EXPECT_LT(std::abs(cavity::final_amplitude(p, make_clear_pulse(p, spec), QubitState::Ground,
                                             false)),
            1e-9);
}

TEST(ClearPulse, ZeroFlatDropsSegment) {
  const auto p = fixtures::device();
  auto spec = spec_at(p, 1.0);
  spec.t_flat = 0.0;
  const auto pulse = make_clear_pulse(p, spec);
  EXPECT_EQ(pulse.size(), 4u);
  EXPECT_LT(std::abs(cavity::final_amplitude(p, pulse, QubitState::Excited, false)), 1e-9);
}

TEST(ClearPulse, ExplicitMultipliersArePreserved) {
  const auto p = fixtures::device();
  auto spec = spec_at(p, 2.0);
  spec.amp_dn1 = -0.3;
  spec.amp_dn2 = 0.5;
  const auto d = resolve_clear_spec(p, spec);
  EXPECT_EQ(*d.spec.amp_dn1, -0.3);
  EXPECT_EQ(*d.spec.amp_dn2, 0.5);
  const auto pulse = make_clear_pulse(p, spec);
  EXPECT_DOUBLE_EQ(pulse.segments()[3].amplitude.real(), -0.3 * spec.eps_steady);
}

TEST(ClearPulse, ZeroDriveIsAllZero) {
  const auto p = fixtures::device();
  const auto pulse = make_clear_pulse(p, ClearSpec{});
  for (const auto& seg : pulse.segments()) EXPECT_EQ(seg.amplitude, cplx(0.0));
}

TEST(ClearPulse, InvalidSpecRejected) {
  const auto p = fixtures::device();
  auto spec = spec_at(p, 1.0);
  spec.t_dn2 = -0.1;
  EXPECT_THROW(make_clear_pulse(p, spec), ConfigError);
  spec = spec_at(p, 1.0);
  spec.t_flat = -1.0;
  EXPECT_THROW(make_clear_pulse(p, spec), ConfigError);
}

TEST(SquarePulse, Shapes) {
  const auto a = make_square_pulse(5.0, 2.0, 0.0);
  EXPECT_EQ(a.size(), 1u);
  EXPECT_EQ(a.label(), "square");
  const auto b = make_square_pulse(5.0, 2.0, 0.6);
  ASSERT_EQ(b.size(), 2u);
  EXPECT_EQ(b.segments()[1].amplitude, cplx(0.0));
  EXPECT_DOUBLE_EQ(b.total_duration(), 2.6);
  EXPECT_THROW(make_square_pulse(5.0, 0.0, 0.0), ConfigError);
  EXPECT_THROW(make_square_pulse(5.0, 1.0, -0.1), ConfigError);
}

TEST(DeriveCoupling, ReferenceDevice) {
  auto p = reference_device();
  const double g = derive_g(p);
  EXPECT_NEAR(units::to_mhz(g), 549.8, 0.5);
  const double wq = units::ghz_to_rad_per_us(p.f_qubit);
  const double wr = units::ghz_to_rad_per_us(p.f_cavity_dressed);
  EXPECT_NEAR(dispersive_chi(g, wq, wr, p.anharmonicity), p.chi, 1e-12 * std::abs(p.chi));
}

TEST(DeriveCoupling, InconsistentInputsRejected) {
  auto p = reference_device();
  p.chi = -p.chi;
  EXPECT_THROW(derive_g(p), ConfigError);
  p = reference_device();
  p.f_cavity_dressed = p.f_qubit;
  EXPECT_THROW(derive_g(p), ConfigError);
}

TEST(KerrConstant, ReferenceDevice) {
  const auto p = with_derived_constants(reference_device());
  const double k_khz = units::to_khz(p.kerr);
  EXPECT_LT(k_khz, -10.0);
  EXPECT_GT(k_khz, -20.0);
  EXPECT_NEAR(k_khz, -18.35, 0.05);
}

TEST(KerrConstant, ScalingAndSign) {
  const double wq = 2 * M_PI * 4833.0, wr = 2 * M_PI * 10759.0, d = 2 * M_PI * -155.0;
  EXPECT_EQ(kerr_constant(0.0, wq, wr, d), 0.0);
  const double k = kerr_constant(3000.0, wq, wr, d);
  EXPECT_LT(k, 0.0);
  EXPECT_GT(kerr_constant(3000.0, wq, wr, -d), 0.0);
  EXPECT_NEAR(kerr_constant(2 * 3000.0, wq, wr, d), 16 * k, 1e-10 * std::abs(16 * k));
  EXPECT_NEAR(kerr_constant(3 * 3000.0, 3 * wq, 3 * wr, 3 * d), 3 * k, 1e-10 * std::abs(3 * k));
  // symmetric under qubit/cavity exchange
  EXPECT_NEAR(kerr_constant(3000.0, wr, wq, d), k, 1e-12 * std::abs(k));
}

TEST(KerrConstant, DerivedConstantsOnlyWhereRequested) {
  const auto base = reference_device();
  const auto only_g = with_derived_constants(base, true, false);
  EXPECT_GT(only_g.g, 0.0);
  EXPECT_EQ(only_g.kerr, base.kerr);
  EXPECT_NE(with_derived_constants(base).kerr, 0.0);
}
