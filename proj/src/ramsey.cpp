#include "clearkit/ramsey.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "clearkit/error.hpp"
#include "clearkit/levmar.hpp"
#include "clearkit/rng.hpp"
#include "clearkit/units.hpp"

namespace clearkit::ramsey {
namespace {

using namespace std::complex_literals;
constexpr double kPi = std::numbers::pi;

struct ModelTerms {
  // per-sample constants that do not depend on (n0, phi0)
  std::vector<cplx> carrier;  // exp(-(gamma2 + i Delta) t)
  std::vector<cplx> tau;
};

ModelTerms precompute(const SystemParams& p, const RamseyConfig& cfg,
                      const std::vector<double>& t) {
  ModelTerms m;
  m.carrier.reserve(t.size());
  m.tau.reserve(t.size());
  for (double x : t) {
    m.carrier.push_back(std::exp(-(cfg.gamma2 + 1i * cfg.detuning) * x));
    m.tau.push_back(photon_memory(p, x));
  }
  return m;
}

double signal_from_terms(cplx carrier, cplx tau, double n0, double phi0, double chi) {
  return 0.5 * (1.0 - std::imag(carrier * std::exp(1i * (phi0 - 2.0 * n0 * chi * tau))));
}

}  // namespace

void RamseyConfig::validate() const {
  if (t_grid.empty()) throw ConfigError("Ramsey grid must be non-empty");
  if (t_grid.front() < 0.0) throw ConfigError("Ramsey grid must start at t >= 0");
  for (std::size_t i = 1; i < t_grid.size(); ++i)
    if (!(t_grid[i] > t_grid[i - 1])) throw ConfigError("Ramsey grid must be strictly increasing");
  if (!(noise_sigma >= 0.0)) throw ConfigError("noise_sigma must be non-negative");
  if (!(gamma2 >= 0.0)) throw ConfigError("gamma2 must be non-negative");
}

std::vector<double> uniform_grid(double t_max, std::size_t points) {
  if (points < 2) throw ConfigError("grid needs at least two points");
  std::vector<double> g(points);
  for (std::size_t i = 0; i < points; ++i)
    g[i] = t_max * static_cast<double>(i) / static_cast<double>(points - 1);
  return g;
}

RamseyConfig default_config(const SystemParams& p, double noise_sigma, std::uint64_t seed) {
  return {units::convert_frequency(10.0), p.gamma2, uniform_grid(0.6, 61), noise_sigma, seed};
}

cplx photon_memory(const SystemParams& p, double t_R) {
  const cplx rate = p.kappa + 2.0i * p.chi;
  return (1.0 - std::exp(-rate * t_R)) / rate;
}

double ramsey_signal(double n0, double phi0, const SystemParams& p, const RamseyConfig& cfg,
                     double t_R) {
  const cplx carrier = std::exp(-(cfg.gamma2 + 1i * cfg.detuning) * t_R);
  return signal_from_terms(carrier, photon_memory(p, t_R), n0, phi0, p.chi);
}

RamseyTrace synthesize_trace(double n0, double phi0, const SystemParams& p,
                             const RamseyConfig& cfg) {
  cfg.validate();
  RamseyTrace tr{cfg.t_grid, {}, cfg};
  tr.signal.reserve(cfg.t_grid.size());
  GaussianSource noise(cfg.rng_seed);
  for (double t : cfg.t_grid) {
    double s = ramsey_signal(n0, phi0, p, cfg, t);
    if (cfg.noise_sigma > 0.0) s += cfg.noise_sigma * noise();
    tr.signal.push_back(s);
  }
  return tr;
}

double wrap_phase(double phi) {
  double w = std::remainder(phi, 2.0 * kPi);  // [-pi, pi]
  if (w <= -kPi) w += 2.0 * kPi;
  return w;
}

FitResult fit_ramsey(const RamseyTrace& trace, const SystemParams& p) {
  const auto& t = trace.t_R;
  const auto& y = trace.signal;
  const auto& cfg = trace.config;
  if (t.size() != y.size()) throw ConfigError("Ramsey trace time and signal lengths differ");
  if (t.size() < 8) throw ConfigError("Ramsey fit needs at least 8 samples");
  for (std::size_t i = 1; i < t.size(); ++i)
    if (!(t[i] > t[i - 1])) throw ConfigError("Ramsey trace times must be strictly increasing");
  if (cfg.detuning == 0.0 || t.back() - t.front() < 2.0 * kPi / std::abs(cfg.detuning))
    throw ConfigError("Ramsey trace must span at least one Ramsey period");

  const auto terms = precompute(p, cfg, t);
  const auto m = static_cast<Eigen::Index>(t.size());
  const fit::ResidualFn residual = [&](const Eigen::VectorXd& x, Eigen::VectorXd& r) {
    r.resize(m);
    for (Eigen::Index i = 0; i < m; ++i)
      r(i) = signal_from_terms(terms.carrier[i], terms.tau[i], x(0), x(1), p.chi) - y[i];
  };
  const fit::ProjectFn project = [](Eigen::VectorXd& x) { x(0) = std::max(0.0, x(0)); };

  constexpr std::array kStartN0{0.01, 0.1, 1.0, 3.0, 10.0};
  bool have_best = false;
  fit::LevMarResult best;
  for (double n_start : kStartN0) {
    for (int k = 0; k < 8; ++k) {
      Eigen::VectorXd x0(2);
      x0 << n_start, wrap_phase(k * kPi / 4.0);
      auto res = fit::levenberg_marquardt(residual, x0, project);
      const bool better = !have_best || (res.converged && !best.converged) ||
                          (res.converged == best.converged &&
                           (res.cost < best.cost || (res.cost == best.cost && res.x(0) < best.x(0))));
      if (better) {
        best = std::move(res);
        have_best = true;
      }
    }
  }

  FitResult out;
  out.n0 = best.x(0);
  out.phi0 = wrap_phase(best.x(1));
  out.residual_norm = std::sqrt(best.cost);
  out.iterations = best.iterations;
  out.converged = best.converged;
  if (m > 2) {
    const double s2 = best.cost / static_cast<double>(m - 2);
    Eigen::FullPivLU<Eigen::MatrixXd> lu(best.jtj);
    if (lu.isInvertible()) {
      const Eigen::MatrixXd cov = s2 * lu.inverse();
      out.n0_stderr = std::sqrt(std::max(0.0, cov(0, 0)));
      out.phi0_stderr = std::sqrt(std::max(0.0, cov(1, 1)));
    }
  }
  return out;
}

DecayFit fit_exponential_decay(const std::vector<DecayPoint>& points, double floor) {
  DecayFit out;
  double sw = 0, st = 0, sy = 0;
  std::vector<DecayPoint> used;
  for (const auto& pt : points) {
    if (pt.n0 > floor) {
      used.push_back(pt);
    } else {
      ++out.excluded;
    }
  }
  out.used = used.size();
  if (used.size() < 3)
    throw NumericalError("exponential fit needs at least 3 points above the floor");
  std::vector<double> times;
  for (const auto& pt : used) times.push_back(pt.t);
  std::sort(times.begin(), times.end());
  if (std::adjacent_find(times.begin(), times.end()) != times.end())
    throw NumericalError("exponential fit needs distinct times");

  for (const auto& pt : used) {
    const double w = pt.n0 * pt.n0;
    sw += w;
    st += w * pt.t;
    sy += w * std::log(pt.n0);
  }
  const double tm = st / sw, ym = sy / sw;
  double stt = 0, sty = 0, syy = 0;
  for (const auto& pt : used) {
    const double w = pt.n0 * pt.n0, dt = pt.t - tm, dy = std::log(pt.n0) - ym;
    stt += w * dt * dt;
    sty += w * dt * dy;
    syy += w * dy * dy;
  }
  const double slope = sty / stt;
  out.rate = -slope;
  out.amplitude = std::exp(ym - slope * tm);
  const double sse = std::max(0.0, syy - slope * sty);
  out.r_squared = syy > 0.0 ? 1.0 - sse / syy : 1.0;
  if (used.size() > 2) {
    // weights are relative, so the residual variance sets the scale
    const double dof = static_cast<double>(used.size()) - 2.0;
    out.rate_stderr = std::sqrt(sse / dof / stt);
  }
  return out;
}

}  // namespace clearkit::ramsey
