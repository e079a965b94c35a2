#include "clearkit/cavity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "clearkit/error.hpp"

namespace clearkit::cavity {
namespace {

using namespace std::complex_literals;

constexpr double kInf = std::numeric_limits<double>::infinity();

cplx rhs(cplx a, double delta, double half_kappa, double kerr, cplx eps) {
  return -1i * (delta + kerr * std::norm(a)) * a - half_kappa * a - 1i * eps;
}

// Real roots of a n^3 + b n^2 + c n + d, polished by Newton.
std::vector<double> real_cubic_roots(double a, double b, double c, double d) {
  std::vector<double> roots;
  const double B = b / a, C = c / a, D = d / a;
  const double p = C - B * B / 3.0;
  const double q = 2.0 * B * B * B / 27.0 - B * C / 3.0 + D;
  const double shift = -B / 3.0;
  const double disc = q * q / 4.0 + p * p * p / 27.0;
  if (disc > 0.0) {
    const double s = std::sqrt(disc);
    roots.push_back(std::cbrt(-q / 2.0 + s) + std::cbrt(-q / 2.0 - s) + shift);
  } else {
    const double r = std::sqrt(-p / 3.0);
    const double arg = std::clamp(3.0 * q / (2.0 * p * r), -1.0, 1.0);
    const double theta = std::acos(arg) / 3.0;
    for (int k = 0; k < 3; ++k)
      roots.push_back(2.0 * r * std::cos(theta - 2.0 * std::numbers::pi * k / 3.0) + shift);
  }
  for (double& x : roots) {
    for (int it = 0; it < 4; ++it) {
      const double f = ((a * x + b) * x + c) * x + d;
      const double df = (3.0 * a * x + 2.0 * b) * x + c;
      if (df == 0.0) break;
      x -= f / df;
    }
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

}  // namespace

double DriveCalibration::eps_for(double p_norm) const {
  if (p_norm < 0.0) throw ConfigError("normalized drive power must be non-negative");
  return std::sqrt(p_norm) * eps_one_photon;
}

cplx steady_state_linear(double delta, double kappa, cplx eps) {
  return -1i * eps / (1i * delta + 0.5 * kappa);
}

cplx propagate_linear(cplx alpha0, double delta, double kappa, cplx eps, double t) {
  const cplx ss = steady_state_linear(delta, kappa, eps);
  return ss + (alpha0 - ss) * std::exp(-(0.5 * kappa + 1i * delta) * t);
}

double max_kerr_step(double delta, double kappa) {
  return std::min(0.02 / kappa, delta == 0.0 ? kInf : 0.02 / std::abs(delta));
}

double default_kerr_step(double delta, double kappa) {
  return std::min(max_kerr_step(delta, kappa), 1e-3);
}

cplx propagate_kerr(cplx alpha0, double delta, double kappa, double kerr, cplx eps, double t,
                    double dt) {
  if (!(dt > 0.0) || dt > max_kerr_step(delta, kappa) * (1.0 + 1e-12))
    throw ConfigError("RK4 step must satisfy 0 < dt <= min(0.02/kappa, 0.02/|delta|)");
  if (t < 0.0) throw ConfigError("propagation time must be non-negative");
  if (t == 0.0) return alpha0;
  const auto steps = static_cast<long>(std::ceil(t / dt - 1e-9));
  const double h = t / static_cast<double>(std::max(1L, steps));
  const double hk = 0.5 * kappa;
  cplx a = alpha0;
  for (long i = 0; i < std::max(1L, steps); ++i) {
    const cplx k1 = rhs(a, delta, hk, kerr, eps);
    const cplx k2 = rhs(a + 0.5 * h * k1, delta, hk, kerr, eps);
    const cplx k3 = rhs(a + 0.5 * h * k2, delta, hk, kerr, eps);
    const cplx k4 = rhs(a + h * k3, delta, hk, kerr, eps);
    a += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return a;
}

namespace {

cplx advance(const SystemParams& p, QubitState s, bool kerr_enabled, double kerr_step, cplx a,
             cplx eps, double t) {
  const double delta = detuning_for_state(p, s);
  if (!kerr_enabled) return propagate_linear(a, delta, p.kappa, eps, t);
  const double dt = kerr_step > 0.0 ? kerr_step : default_kerr_step(delta, p.kappa);
  return propagate_kerr(a, delta, p.kappa, p.kerr, eps, t, dt);
}

std::vector<double> sample_times(const PulseEnvelope& pulse, double interval) {
  const auto bounds = pulse.boundaries();
  const double total = bounds.back();
  std::vector<double> t(bounds);
  const auto n = static_cast<long>(std::floor(total / interval + 1e-9));
  for (long k = 1; k <= n; ++k) t.push_back(static_cast<double>(k) * interval);
  std::sort(t.begin(), t.end());
  const double tol = 1e-12 * std::max(1.0, total);
  std::vector<double> out;
  for (double x : t) {
    if (x > total + tol) continue;
    if (out.empty() || x - out.back() > tol) out.push_back(x);
  }
  out.back() = total;
  return out;
}

}  // namespace

std::vector<cplx> simulate_branch(const SystemParams& p, const PulseEnvelope& pulse, QubitState s,
                                  const SimulationOptions& opt, std::vector<double>* times) {
  if (!(opt.sample_interval > 0.0)) throw ConfigError("sample interval must be positive");
  const auto t = sample_times(pulse, opt.sample_interval);
  const auto bounds = pulse.boundaries();
  const auto& segs = pulse.segments();

  std::vector<cplx> alpha;
  alpha.reserve(t.size());
  alpha.push_back(0.0);
  std::size_t seg = 0;
  for (std::size_t i = 1; i < t.size(); ++i) {
    // every interval lies inside one segment because boundaries are on the grid
    const double mid = 0.5 * (t[i - 1] + t[i]);
    while (seg + 1 < segs.size() && mid > bounds[seg + 1]) ++seg;
    alpha.push_back(advance(p, s, opt.kerr_enabled, opt.kerr_step, alpha.back(),
                            segs[seg].amplitude, t[i] - t[i - 1]));
  }
  if (times) *times = t;
  return alpha;
}

Trajectory simulate_pulse(const SystemParams& p, const PulseEnvelope& pulse,
                          const SimulationOptions& opt) {
  Trajectory tr;
  tr.sample_interval = opt.sample_interval;
  tr.ground = simulate_branch(p, pulse, QubitState::Ground, opt, &tr.times);
  tr.excited = simulate_branch(p, pulse, QubitState::Excited, opt);
  return tr;
}

cplx final_amplitude(const SystemParams& p, const PulseEnvelope& pulse, QubitState s,
                     bool kerr_enabled, cplx alpha0, double kerr_step) {
  cplx a = alpha0;
  for (const auto& seg : pulse.segments())
    a = advance(p, s, kerr_enabled, kerr_step, a, seg.amplitude, seg.duration);
  return a;
}

KerrSteadyState steady_state_kerr(const SystemParams& p, double eps, QubitState s) {
  const double delta = detuning_for_state(p, s);
  const double lin = delta * delta + 0.25 * p.kappa * p.kappa;
  const double e2 = eps * eps;
  if (p.kerr == 0.0 || e2 == 0.0) return {e2 / lin, false};

  const double a = p.kerr * p.kerr, b = 2.0 * delta * p.kerr;
  constexpr int kSteps = 512;
  double prev = 0.0;
  std::vector<double> roots;
  for (int k = 1; k <= kSteps; ++k) {
    const double ek = eps * static_cast<double>(k) / kSteps;
    roots = real_cubic_roots(a, b, lin, -ek * ek);
    prev = *std::min_element(roots.begin(), roots.end(), [prev](double x, double y) {
      return std::abs(x - prev) < std::abs(y - prev);
    });
  }
  int distinct = 0;
  for (std::size_t i = 0; i < roots.size(); ++i) {
    if (roots[i] > 0.0 && (i == 0 || roots[i] - roots[i - 1] > 1e-9 * std::max(1.0, roots[i])))
      ++distinct;
  }
  return {prev, distinct > 1};
}

double free_decay(double n0, double kappa, double t) { return n0 * std::exp(-kappa * t); }

DriveCalibration calibrate_drive(const SystemParams& p) {
  return {std::sqrt(p.chi * p.chi + 0.25 * p.kappa * p.kappa)};
}

double stark_shift(double n, double chi) { return 2.0 * chi * n; }

}  // namespace clearkit::cavity
