#pragma once

#include <Eigen/Dense>
#include <functional>

namespace clearkit::fit {

/// Fills the residual vector for a parameter vector.
using ResidualFn = std::function<void(const Eigen::VectorXd& x, Eigen::VectorXd& r)>;
/// Maps a proposed parameter vector back into the feasible set, in place.
using ProjectFn = std::function<void(Eigen::VectorXd& x)>;

struct LevMarOptions {
  int max_iterations = 200;
  double x_tol = 1e-10;  ///< relative step size for convergence
  double initial_lambda = 1e-3;
};

struct LevMarResult {
  Eigen::VectorXd x;
  Eigen::VectorXd residuals;
  Eigen::MatrixXd jtj;  ///< J^T J at the solution
  double cost = 0.0;    ///< sum of squared residuals
  int iterations = 0;
  bool converged = false;
};

/// Damped Gauss-Newton with a central-difference Jacobian.
LevMarResult levenberg_marquardt(const ResidualFn& residual, Eigen::VectorXd x0,
                                 const ProjectFn& project = {}, const LevMarOptions& opt = {});

}  // namespace clearkit::fit
