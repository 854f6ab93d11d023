#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "liesim/optim.hpp"
#include "liesim/rng.hpp"

using namespace liesim;

TEST_CASE("quadratic bowl") {
  ObjectiveFn f = [](const Eigen::VectorXd& x, Eigen::VectorXd* grad) {
    if (grad) *grad = 2.0 * x;
    return x.squaredNorm();
  };
  Eigen::VectorXd x0(4);
  x0 << 1.0, -2.0, 3.0, 0.5;
  OptimResult res = minimize_bfgs(f, x0, 500, 1e-10);
  CHECK(res.converged);
  CHECK(res.value < 1e-16);
  CHECK(res.x.norm() < 1e-8);
}

TEST_CASE("rosenbrock") {
  ObjectiveFn f = [](const Eigen::VectorXd& x, Eigen::VectorXd* grad) {
    double a = 1.0 - x[0];
    double b = x[1] - x[0] * x[0];
    if (grad) {
      (*grad)[0] = -2.0 * a - 400.0 * x[0] * b;
      (*grad)[1] = 200.0 * b;
    }
    return a * a + 100.0 * b * b;
  };
  Eigen::VectorXd x0(2);
  x0 << -1.2, 1.0;
  OptimResult res = minimize_bfgs(f, x0, 2000, 1e-9);
  CHECK(res.converged);
  CHECK((res.x - Eigen::VectorXd::Ones(2)).norm() < 1e-6);
}

TEST_CASE("noisy objective stalls rather than diverging") {
  Rng rng(71);
  ObjectiveFn f = [&rng](const Eigen::VectorXd& x, Eigen::VectorXd* grad) {
    if (grad) {
      *grad = 2.0 * x;
      for (int i = 0; i < grad->size(); ++i) (*grad)[i] += 0.5 * rng.gaussian();
    }
    return x.squaredNorm() + 0.5 * rng.gaussian();
  };
  Eigen::VectorXd x0(3);
  x0 << 2.0, -1.0, 0.7;
  OptimResult res = minimize_bfgs(f, x0, 200, 1e-9);
  CHECK_FALSE(res.converged);
  CHECK(res.x.allFinite());
}

TEST_CASE("iteration budget is honored") {
  ObjectiveFn f = [](const Eigen::VectorXd& x, Eigen::VectorXd* grad) {
    if (grad) *grad = 2.0 * x;
    return x.squaredNorm();
  };
  Eigen::VectorXd x0 = Eigen::VectorXd::Constant(2, 5.0);
  OptimResult res = minimize_bfgs(f, x0, 2, 1e-30);
  CHECK(res.iterations <= 2);
}
