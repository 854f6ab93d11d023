#include "liesim/optim.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_multimin.h>

#include <stdexcept>

namespace liesim {

namespace {

struct Adapter {
  const ObjectiveFn* objective;
  int n;
};

double eval_f(const gsl_vector* v, void* params) {
  const auto* a = static_cast<const Adapter*>(params);
  Eigen::Map<const Eigen::VectorXd> x(v->data, a->n);
  return (*a->objective)(x, nullptr);
}

void eval_df(const gsl_vector* v, void* params, gsl_vector* g) {
  const auto* a = static_cast<const Adapter*>(params);
  Eigen::Map<const Eigen::VectorXd> x(v->data, a->n);
  Eigen::VectorXd grad(a->n);
  (*a->objective)(x, &grad);
  for (int i = 0; i < a->n; ++i) gsl_vector_set(g, i, grad[i]);
}

void eval_fdf(const gsl_vector* v, void* params, double* f, gsl_vector* g) {
  const auto* a = static_cast<const Adapter*>(params);
  Eigen::Map<const Eigen::VectorXd> x(v->data, a->n);
  Eigen::VectorXd grad(a->n);
  *f = (*a->objective)(x, &grad);
  for (int i = 0; i < a->n; ++i) gsl_vector_set(g, i, grad[i]);
}

}  // namespace

OptimResult minimize_bfgs(const ObjectiveFn& objective, const Eigen::VectorXd& x0,
                          int max_iterations, double grad_tol, double initial_step) {
  gsl_set_error_handler_off();
  int n = static_cast<int>(x0.size());
  if (n < 1) throw std::invalid_argument("empty parameter vector");

  Adapter adapter{&objective, n};
  gsl_multimin_function_fdf fdf;
  fdf.n = static_cast<size_t>(n);
  fdf.f = &eval_f;
  fdf.df = &eval_df;
  fdf.fdf = &eval_fdf;
  fdf.params = &adapter;

  gsl_vector* x = gsl_vector_alloc(n);
  for (int i = 0; i < n; ++i) gsl_vector_set(x, i, x0[i]);
  gsl_multimin_fdfminimizer* solver =
      gsl_multimin_fdfminimizer_alloc(gsl_multimin_fdfminimizer_vector_bfgs2, n);
  gsl_multimin_fdfminimizer_set(solver, &fdf, x, initial_step, 0.1);

  OptimResult result;
  result.status = "max_iterations";
  int iter = 0;
  while (iter < max_iterations) {
    ++iter;
    int status = gsl_multimin_fdfminimizer_iterate(solver);
    if (status == GSL_ENOPROG || status == GSL_EBADFUNC) {
      result.status = "stalled";
      break;
    }
    if (gsl_multimin_test_gradient(solver->gradient, grad_tol) == GSL_SUCCESS) {
      result.status = "converged";
      result.converged = true;
      break;
    }
  }
  result.iterations = iter;
  result.value = solver->f;
  result.x = Eigen::Map<const Eigen::VectorXd>(solver->x->data, n);
  gsl_multimin_fdfminimizer_free(solver);
  gsl_vector_free(x);
  return result;
}

}  // namespace liesim
