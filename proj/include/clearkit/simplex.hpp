#pragma once

#include <functional>
#include <vector>

namespace clearkit::optim {

struct SimplexSettings {
  int max_evaluations = 300;  ///< the initial simplex is always evaluated in full
  double f_tol = 1e-3;        ///< stop when max f - min f over the simplex drops below
  double reflection = 1.0;
  double expansion = 2.0;
  double contraction = 0.5;
  double shrink = 0.5;
  double initial_step = 0.2;  ///< relative perturbation per coordinate (absolute if x = 0)
};

struct SimplexResult {
  std::vector<double> x;
  double f = 0.0;
  int evaluations = 0;
  bool converged = false;  ///< f_tol reached before the budget ran out
};

using Objective = std::function<double(const std::vector<double>&)>;

/// Downhill simplex (Nelder-Mead) minimization.
SimplexResult nelder_mead(const Objective& f, const std::vector<double>& x0,
                          const SimplexSettings& s = {});

}  // namespace clearkit::optim
