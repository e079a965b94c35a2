#include "clearkit/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "clearkit/error.hpp"

namespace clearkit::optim {
namespace {

struct Vertex {
  std::vector<double> x;
  double f;
};

std::vector<double> affine(const std::vector<double>& a, const std::vector<double>& b, double t) {
  // a + t (b - a)
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + t * (b[i] - a[i]);
  return out;
}

}  // namespace

SimplexResult nelder_mead(const Objective& f, const std::vector<double>& x0,
                          const SimplexSettings& s) {
  if (x0.empty()) throw ConfigError("simplex needs at least one parameter");
  const std::size_t n = x0.size();
  int evals = 0;
  auto eval = [&](const std::vector<double>& x) {
    ++evals;
    const double v = f(x);
    return std::isnan(v) ? std::numeric_limits<double>::infinity() : v;
  };

  std::vector<Vertex> simplex;
  simplex.push_back({x0, eval(x0)});
  for (std::size_t i = 0; i < n; ++i) {
    auto x = x0;
    x[i] = x0[i] != 0.0 ? x0[i] * (1.0 + s.initial_step) : s.initial_step;
    simplex.push_back({x, eval(x)});
  }
  auto by_f = [](const Vertex& a, const Vertex& b) { return a.f < b.f; };
  auto budget_left = [&] { return evals < s.max_evaluations; };

  bool converged = false;
  while (true) {
    std::stable_sort(simplex.begin(), simplex.end(), by_f);
    if (simplex.back().f - simplex.front().f < s.f_tol) {
      converged = true;
      break;
    }
    if (!budget_left()) break;

    std::vector<double> centroid(n, 0.0);
    for (std::size_t v = 0; v < n; ++v)
      for (std::size_t i = 0; i < n; ++i) centroid[i] += simplex[v].x[i] / static_cast<double>(n);

    Vertex& worst = simplex.back();
    const double f_best = simplex.front().f, f_second_worst = simplex[n - 1].f;

    Vertex r{affine(centroid, worst.x, -s.reflection), 0.0};
    r.f = eval(r.x);
    if (r.f < f_best) {
      if (!budget_left()) {
        worst = std::move(r);
        continue;
      }
      Vertex e{affine(centroid, worst.x, -s.expansion), 0.0};
      e.f = eval(e.x);
      worst = e.f < r.f ? std::move(e) : std::move(r);
      continue;
    }
    if (r.f < f_second_worst) {
      worst = std::move(r);
      continue;
    }
    if (!budget_left()) {
      if (r.f < worst.f) worst = std::move(r);
      continue;
    }
    const bool outside = r.f < worst.f;
    Vertex c{outside ? affine(centroid, r.x, s.contraction)
                     : affine(centroid, worst.x, s.contraction),
             0.0};
    c.f = eval(c.x);
    if ((outside && c.f <= r.f) || (!outside && c.f < worst.f)) {
      worst = std::move(c);
      continue;
    }
    for (std::size_t v = 1; v <= n && budget_left(); ++v) {
      simplex[v].x = affine(simplex.front().x, simplex[v].x, s.shrink);
      simplex[v].f = eval(simplex[v].x);
    }
  }
  std::stable_sort(simplex.begin(), simplex.end(), by_f);
  return {simplex.front().x, simplex.front().f, evals, converged};
}

}  // namespace clearkit::optim
