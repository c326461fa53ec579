#pragma once

#include <functional>

namespace smallpoly {

struct RootResult {
  double root = 0.0;
  double residual = 0.0;  // f(root)
  int iterations = 0;
};

struct RootOptions {
  double residual_tol = 1e-15;
  int max_iter = 200;
};

// Brent's method (bisection safeguarding inverse quadratic / secant steps) on
// [lo, hi]. Throws DomainError when f(lo) and f(hi) share a sign and
// OptimizationFailure when max_iter runs out before |f| <= residual_tol and
// the bracket has not collapsed to adjacent doubles.
RootResult find_root(const std::function<double(double)>& f, double lo, double hi,
                     const RootOptions& options = {});

}  // namespace smallpoly
