#pragma once

#include <Eigen/Dense>
#include <functional>
#include <string>

namespace liesim {

// Objective callback: returns the value and, when grad is non-null, fills the
// gradient at x.
using ObjectiveFn = std::function<double(const Eigen::VectorXd& x, Eigen::VectorXd* grad)>;

struct OptimResult {
  Eigen::VectorXd x;
  double value = 0.0;
  int iterations = 0;
  bool converged = false;  // gradient norm below tolerance
  std::string status;      // "converged", "max_iterations", "stalled"
};

// Quasi-Newton minimization (GSL vector_bfgs2 with line search). Stalled line
// searches end the run at the current iterate, which is the expected outcome
// for noisy objectives.
OptimResult minimize_bfgs(const ObjectiveFn& objective, const Eigen::VectorXd& x0,
                          int max_iterations = 2000, double grad_tol = 1e-9,
                          double initial_step = 0.1);

}  // namespace liesim
