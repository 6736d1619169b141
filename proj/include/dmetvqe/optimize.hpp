#pragma once

#include <functional>

#include "dmetvqe/types.hpp"

namespace dmetvqe::optimize {

using Objective = std::function<double(const Vector&)>;

struct BFGSOptions {
  int max_iterations = 200;
  /// Stop when max |g_i| falls below this.
  double gradient_tolerance = 1e-6;
  /// Stop when an accepted step changes the objective by less than this.
  double value_tolerance = 1e-9;
  /// Central-difference step per component.
  double fd_step = 1e-5;
  /// Wolfe constants.
  double c1 = 1e-4;
  double c2 = 0.9;
};

struct OptimizationResult {
  Vector x;
  double value = 0.0;
  Vector gradient;
  int iterations = 0;
  int evaluations = 0;
  bool converged = false;
};

/// (f(x + h e_i) - f(x - h e_i)) / 2h for every component; 2n evaluations.
Vector central_difference_gradient(const Objective& f, const Vector& x, double step,
                                   int* evaluations = nullptr);

/// Quasi-Newton minimization with inverse-Hessian BFGS updates, a strong
/// Wolfe line search and finite-difference gradients. Hitting the iteration
/// cap returns an unconverged result rather than throwing.
OptimizationResult bfgs_minimize(const Objective& f, const Vector& x0, const BFGSOptions& options = {});

}  // namespace dmetvqe::optimize
