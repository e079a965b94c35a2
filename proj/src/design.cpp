#include "clearkit/design.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <sstream>

#include "clearkit/cavity.hpp"
#include "clearkit/error.hpp"
#include "clearkit/units.hpp"

namespace clearkit::design {
namespace {

using namespace std::complex_literals;

// alpha(t1 + t2) = free + c1 * eps1 + c2 * eps2 for the linear oscillator.
struct AffineMap {
  cplx free, c1, c2;
};

AffineMap two_segment_map(double kappa, double delta, double t1, double t2, cplx start) {
  const cplx lambda = 0.5 * kappa + 1i * delta;
  const cplx e1 = std::exp(-lambda * t1), e2 = std::exp(-lambda * t2);
  const cplx per_eps = -1i / lambda;
  return {e1 * e2 * start, e2 * (1.0 - e1) * per_eps, (1.0 - e2) * per_eps};
}

template <class Matrix>
double condition_number(const Matrix& m) {
  Eigen::JacobiSVD<Matrix> svd(m);
  const auto& s = svd.singularValues();
  const double smin = s(s.size() - 1);
  return smin > 0.0 ? s(0) / smin : std::numeric_limits<double>::infinity();
}

[[noreturn]] void reject(double cond, double t1, double t2) {
  std::ostringstream os;
  os << "segment-amplitude system is singular or ill-conditioned (condition number " << cond
     << " > " << kMaxConditionNumber << ") for durations " << t1 << " us, " << t2
     << " us; choose different segment durations";
  throw SingularSystemError(os.str(), cond);
}

void check_durations(double t1, double t2) {
  if (!(t1 > 0.0) || !(t2 > 0.0)) throw ConfigError("segment durations must be positive");
}

}  // namespace

void ClearSpec::validate() const {
  if (!std::isfinite(eps_steady)) throw ConfigError("eps_steady must be finite");
  for (double t : {t_up1, t_up2, t_dn1, t_dn2}) {
    if (!(t > 0.0) || !std::isfinite(t)) throw ConfigError("CLEAR segment durations must be positive");
  }
  if (!(t_flat >= 0.0) || !std::isfinite(t_flat)) throw ConfigError("t_flat must be non-negative");
  for (const auto& a : {amp_up1, amp_up2, amp_dn1, amp_dn2}) {
    if (a && !std::isfinite(*a)) throw ConfigError("CLEAR amplitude multipliers must be finite");
  }
}

SegmentPair solve_segment_pair(const SystemParams& p, double t1, double t2, cplx alpha_start,
                               cplx alpha_target) {
  check_durations(t1, t2);
  const auto map =
      two_segment_map(p.kappa, detuning_for_state(p, QubitState::Ground), t1, t2, alpha_start);
  Eigen::Matrix2d m;
  m << map.c1.real(), map.c2.real(), map.c1.imag(), map.c2.imag();
  const cplx rhs = alpha_target - map.free;
  const double cond = condition_number(m);
  if (!(cond <= kMaxConditionNumber)) reject(cond, t1, t2);
  const Eigen::Vector2d x = m.partialPivLu().solve(Eigen::Vector2d(rhs.real(), rhs.imag()));
  return {x(0), x(1), cond};
}

ComplexSegmentPair solve_segment_pair_complex(double kappa, double delta_g, double delta_e,
                                              double t1, double t2, cplx start_g, cplx target_g,
                                              cplx start_e, cplx target_e) {
  check_durations(t1, t2);
  const auto mg = two_segment_map(kappa, delta_g, t1, t2, start_g);
  const auto me = two_segment_map(kappa, delta_e, t1, t2, start_e);
  // unknowns: Re eps1, Im eps1, Re eps2, Im eps2
  Eigen::Matrix4d m;
  Eigen::Vector4d rhs;
  int row = 0;
  for (const auto& [map, target] : {std::pair{mg, target_g}, std::pair{me, target_e}}) {
    const cplx r = target - map.free;
    m.row(row) << map.c1.real(), -map.c1.imag(), map.c2.real(), -map.c2.imag();
    m.row(row + 1) << map.c1.imag(), map.c1.real(), map.c2.imag(), map.c2.real();
    rhs(row) = r.real();
    rhs(row + 1) = r.imag();
    row += 2;
  }
  const double cond = condition_number(m);
  if (!(cond <= kMaxConditionNumber)) reject(cond, t1, t2);
  const Eigen::Vector4d x = m.partialPivLu().solve(rhs);
  return {cplx(x(0), x(1)), cplx(x(2), x(3)), cond};
}

ClearDesign resolve_clear_spec(const SystemParams& p, const ClearSpec& spec) {
  spec.validate();
  ClearDesign out{spec};
  auto& s = out.spec;
  if (s.eps_steady == 0.0) {
    // nothing to ring up or down
    for (auto* a : {&s.amp_up1, &s.amp_up2, &s.amp_dn1, &s.amp_dn2})
      if (!*a) *a = 0.0;
    return out;
  }
  const cplx steady = cavity::steady_state_linear(detuning_for_state(p, QubitState::Ground),
                                                  p.kappa, s.eps_steady);
  if (!s.amp_up1 || !s.amp_up2) {
    const auto up = solve_segment_pair(p, s.t_up1, s.t_up2, 0.0, steady);
    s.amp_up1 = up.eps1 / s.eps_steady;
    s.amp_up2 = up.eps2 / s.eps_steady;
    out.condition_up = up.condition_number;
  }
  if (!s.amp_dn1 || !s.amp_dn2) {
    const auto dn = solve_segment_pair(p, s.t_dn1, s.t_dn2, steady, 0.0);
    s.amp_dn1 = dn.eps1 / s.eps_steady;
    s.amp_dn2 = dn.eps2 / s.eps_steady;
    out.condition_down = dn.condition_number;
  }
  return out;
}

PulseEnvelope make_clear_pulse(const SystemParams& p, const ClearSpec& spec) {
  const auto s = resolve_clear_spec(p, spec).spec;
  const double e = s.eps_steady;
  std::vector<PulseSegment> segs{{s.t_up1, *s.amp_up1 * e}, {s.t_up2, *s.amp_up2 * e}};
  if (s.t_flat > 0.0) segs.push_back({s.t_flat, e});
  segs.push_back({s.t_dn1, *s.amp_dn1 * e});
  segs.push_back({s.t_dn2, *s.amp_dn2 * e});
  return PulseEnvelope(std::move(segs), "clear");
}

PulseEnvelope make_square_pulse(double eps, double duration, double tail) {
  if (!(tail >= 0.0)) throw ConfigError("square-pulse tail must be non-negative");
  std::vector<PulseSegment> segs{{duration, eps}};
  if (tail > 0.0) segs.push_back({tail, 0.0});
  return PulseEnvelope(std::move(segs), "square");
}

double dispersive_chi(double g, double omega_q, double omega_r, double anharmonicity) {
  const double detuning = omega_q - omega_r;
  return g * g * anharmonicity / (detuning * (detuning + anharmonicity));
}

double derive_g(const SystemParams& p) {
  const double wq = units::ghz_to_rad_per_us(p.f_qubit);
  const double wr = units::ghz_to_rad_per_us(p.f_cavity_dressed);
  const double detuning = wq - wr, d = p.anharmonicity;
  if (detuning == 0.0 || detuning + d == 0.0 || d == 0.0)
    throw ConfigError("cannot derive g: qubit-cavity detuning and anharmonicity must be nonzero "
                      "and detuning + anharmonicity != 0");
  const double radicand = p.chi * detuning * (detuning + d) / d;
  if (radicand < 0.0)
    throw ConfigError("cannot derive g: chi, detuning and anharmonicity are inconsistent "
                      "(negative g^2)");
  return std::sqrt(radicand);
}

double kerr_constant(double g, double omega_q, double omega_r, double anharmonicity) {
  const double q2 = omega_q * omega_q, r2 = omega_r * omega_r;
  const double g2 = g * g;
  const double diff = q2 - r2;
  const double diff2 = diff * diff;
  return 2.0 * g2 * g2 * anharmonicity * (3.0 * q2 * q2 + 2.0 * q2 * r2 + 3.0 * r2 * r2) /
         (diff2 * diff2);
}

double kerr_constant(const SystemParams& p) {
  return kerr_constant(p.g, units::ghz_to_rad_per_us(p.f_qubit),
                       units::ghz_to_rad_per_us(p.f_cavity_dressed), p.anharmonicity);
}

SystemParams with_derived_constants(SystemParams p, bool derive_coupling, bool derive_kerr) {
  if (derive_coupling) p.g = derive_g(p);
  if (derive_kerr) p.kerr = kerr_constant(p);
  return p;
}

}  // namespace clearkit::design
