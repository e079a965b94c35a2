#pragma once

#include <optional>

#include "clearkit/params.hpp"
#include "clearkit/pulse.hpp"

namespace clearkit::design {

/// Five-segment reset pulse: two ring-up, one flat, two ring-down segments.
/// Amplitudes are real multipliers of eps_steady; unset ones are solved for
/// in the linear model by make_clear_pulse.
struct ClearSpec {
  double eps_steady = 0.0;  ///< rad/us
  double t_up1 = 0.15, t_up2 = 0.15;
  double t_flat = 1.7;
  double t_dn1 = 0.15, t_dn2 = 0.15;
  std::optional<double> amp_up1, amp_up2, amp_dn1, amp_dn2;

  bool complete() const { return amp_up1 && amp_up2 && amp_dn1 && amp_dn2; }
  void validate() const;
};

/// Systems worse conditioned than this are rejected.
inline constexpr double kMaxConditionNumber = 1e8;

struct SegmentPair {
  double eps1 = 0.0;  ///< rad/us
  double eps2 = 0.0;
  double condition_number = 1.0;
};

/// Real amplitudes for two consecutive segments of length t1, t2 that carry
/// the Ground-branch field from alpha_start to alpha_target exactly in the
/// linear model at the midpoint carrier. The Excited branch then goes from
/// -conj(alpha_start) to -conj(alpha_target).
SegmentPair solve_segment_pair(const SystemParams& p, double t1, double t2, cplx alpha_start,
                               cplx alpha_target);

struct ComplexSegmentPair {
  cplx eps1, eps2;
  double condition_number = 1.0;
};

/// Complex-amplitude variant with independent endpoints per branch and an
/// arbitrary per-branch detuning (for carriers away from the midpoint).
ComplexSegmentPair solve_segment_pair_complex(double kappa, double delta_g, double delta_e,
                                              double t1, double t2, cplx start_g, cplx target_g,
                                              cplx start_e, cplx target_e);

struct ClearDesign {
  ClearSpec spec;  ///< with every multiplier filled in
  double condition_up = 1.0;
  double condition_down = 1.0;
};

/// Fills in missing multipliers. Ring-up goes from vacuum to the linear
/// steady state at eps_steady; ring-down from that steady state to vacuum.
ClearDesign resolve_clear_spec(const SystemParams& p, const ClearSpec& spec);

/// [up1, up2, flat, dn1, dn2]; a zero-length flat segment is dropped.
PulseEnvelope make_clear_pulse(const SystemParams& p, const ClearSpec& spec);

/// Constant drive for `duration`, optionally followed by a zero-amplitude tail.
PulseEnvelope make_square_pulse(double eps, double duration, double tail);

/// Transmon dispersive pull chi = g^2 delta / (Delta (Delta + delta)),
/// Delta = omega_q - omega_r. Inputs in rad/us.
double dispersive_chi(double g, double omega_q, double omega_r, double anharmonicity);

/// Inverts dispersive_chi for g > 0 using the dressed cavity frequency.
double derive_g(const SystemParams& p);

/// Small-anharmonicity self-Kerr:
/// K = 2 g^4 delta (3 wq^4 + 2 wq^2 wr^2 + 3 wr^4) / (wq^2 - wr^2)^4.
double kerr_constant(const SystemParams& p);
double kerr_constant(double g, double omega_q, double omega_r, double anharmonicity);

/// Copy of p with g and/or kerr computed from the other constants.
SystemParams with_derived_constants(SystemParams p, bool derive_coupling = true,
                                    bool derive_kerr = true);

}  // namespace clearkit::design
