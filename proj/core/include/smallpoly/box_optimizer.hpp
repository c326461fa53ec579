#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace smallpoly {

// Objective with gradient: returns f(x) and writes df/dx into grad.
using ValueAndGradient = std::function<double(std::span<const double> x, std::span<double> grad)>;

struct BoundedOptions {
  double pg_tol = 1e-8;       // infinity norm of the projected gradient
  int max_iter = 2000;
  int memory = 10;            // L-BFGS correction pairs
  double armijo = 1e-4;
  int max_backtracks = 60;
  int stall_iterations = 8;   // stop after this many steps without a relative decrease above rel_decrease_tol
  double rel_decrease_tol = 1e-15;
};

struct BoundedResult {
  std::vector<double> x;
  double value = 0.0;          // objective value at x (minimization sense)
  double pg_norm = 0.0;
  int iterations = 0;
  int evaluations = 0;
  bool converged = false;
  std::string message;
};

// Projected limited-memory BFGS for min f(x) subject to lower <= x <= upper.
// Variables pinned at a bound with the gradient pointing outward are frozen
// for the step; the rest take the two-loop L-BFGS direction, followed by a
// backtracking Armijo search along the projected path.
BoundedResult minimize_bounded(const ValueAndGradient& fg, std::vector<double> x0,
                               std::span<const double> lower, std::span<const double> upper,
                               const BoundedOptions& options = {});

// Infinity norm of x - clamp(x - g) over the box.
double projected_gradient_norm(std::span<const double> x, std::span<const double> grad,
                               std::span<const double> lower, std::span<const double> upper);

struct BoxProblem {
  int dim = 0;
  std::vector<double> lower;
  std::vector<double> upper;
  std::function<double(std::span<const double>)> objective;  // maximized
  // Optional analytic gradient of the objective; central differences otherwise.
  std::function<void(std::span<const double>, std::span<double>)> gradient;
  double tol = 1e-8;
  int max_iter = 2000;
  // Extra starts: each seed jitters the supplied start by up to
  // jitter_fraction of the box width per coordinate.
  std::vector<std::uint64_t> multistart_seeds;
  double jitter_fraction = 0.05;
  // Central-difference step is fd_step * (1 + |x_i|) unless fd_absolute.
  double fd_step = 1e-7;
  bool fd_absolute = false;
};

struct BoxDiagnostics {
  bool converged = false;
  double pg_norm = 0.0;
  int iterations = 0;
  int evaluations = 0;
  int starts = 0;
  int best_start = 0;
  // Largest |value_i - best| over the starts that converged; disagreement
  // above 1e-10 is reported, not resolved.
  double start_spread = 0.0;
  std::vector<double> start_values;
  std::string message;
};

struct BoxResult {
  std::vector<double> x;
  double value = 0.0;
  BoxDiagnostics diagnostics;
};

// Maximizes p.objective over the box from `start` plus the jittered restarts.
// Deterministic for a given seed list. Throws DomainError on malformed input.
BoxResult maximize_box(const BoxProblem& p, std::span<const double> start);

// Central-difference gradient, one-sided where the stencil would leave the box.
void finite_difference_gradient(const std::function<double(std::span<const double>)>& f,
                                std::span<const double> x, std::span<const double> lower,
                                std::span<const double> upper, double step, bool absolute_step,
                                std::span<double> grad);

}  // namespace smallpoly
