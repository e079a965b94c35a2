#include "clearkit/levmar.hpp"

#include <cmath>

namespace clearkit::fit {
namespace {

void jacobian(const ResidualFn& f, const Eigen::VectorXd& x, Eigen::Index m, Eigen::MatrixXd& J) {
  J.resize(m, x.size());
  Eigen::VectorXd xp = x, xm = x, rp(m), rm(m);
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    const double h = 1e-6 * std::max(1.0, std::abs(x(j)));
    xp(j) = x(j) + h;
    xm(j) = x(j) - h;
    f(xp, rp);
    f(xm, rm);
    J.col(j) = (rp - rm) / (2.0 * h);
    xp(j) = xm(j) = x(j);
  }
}

}  // namespace

LevMarResult levenberg_marquardt(const ResidualFn& residual, Eigen::VectorXd x0,
                                 const ProjectFn& project, const LevMarOptions& opt) {
  LevMarResult out;
  if (project) project(x0);
  out.x = std::move(x0);
  residual(out.x, out.residuals);
  out.cost = out.residuals.squaredNorm();
  const Eigen::Index m = out.residuals.size();

  Eigen::MatrixXd J;
  jacobian(residual, out.x, m, J);
  double lambda = opt.initial_lambda;
  Eigen::VectorXd trial_r(m);

  for (out.iterations = 1; out.iterations <= opt.max_iterations; ++out.iterations) {
    const Eigen::MatrixXd jtj = J.transpose() * J;
    const Eigen::VectorXd grad = J.transpose() * out.residuals;
    Eigen::MatrixXd damped = jtj;
    const double floor = 1e-12 * std::max(1e-300, jtj.diagonal().maxCoeff());
    for (Eigen::Index i = 0; i < damped.rows(); ++i)
      damped(i, i) += lambda * std::max(jtj(i, i), floor);

    Eigen::VectorXd trial = out.x - damped.ldlt().solve(grad);
    if (project) project(trial);
    const double step = (trial - out.x).norm();
    const bool tiny = step < opt.x_tol * (out.x.norm() + opt.x_tol);

    residual(trial, trial_r);
    const double trial_cost = trial_r.squaredNorm();
    if (std::isfinite(trial_cost) && trial_cost <= out.cost) {
      out.x = trial;
      out.residuals = trial_r;
      out.cost = trial_cost;
      lambda = std::max(lambda / 3.0, 1e-12);
      if (tiny) {
        out.converged = true;
        break;
      }
      jacobian(residual, out.x, m, J);
    } else {
      if (tiny) {
        out.converged = true;
        break;
      }
      lambda *= 4.0;
      if (lambda > 1e20) {
        out.converged = true;  // no descent direction left at working precision
        break;
      }
    }
  }
  out.iterations = std::min(out.iterations, opt.max_iterations);
  out.jtj = J.transpose() * J;
  return out;
}

}  // namespace clearkit::fit
