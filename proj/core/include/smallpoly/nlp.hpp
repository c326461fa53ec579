#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "smallpoly/geometry.hpp"

namespace smallpoly {

// Symmetric-skeleton area problem over the n/2 turning angles:
//
//   maximize   sin theta_0 + sum_{k=2}^{n/2-1} 2A_k(theta)
//   subject to sum theta_k = pi/2                          (c1)
//              sum_{i<=n/2-2} (-1)^i sin(phi_i) = (-1)^{n/2}/2   (c2)
//              0 <= theta_0 <= pi/6, 0 <= theta_k <= pi/3
//
// phi_i is the cumulative angle theta_0 + ... + theta_i.
struct NlpProblem {
  int n = 0;

  std::size_t dim() const { return static_cast<std::size_t>(n / 2); }
  double objective(std::span<const double> theta) const;
  // Analytic gradient of the objective; O(n).
  void gradient(std::span<const double> theta, std::span<double> grad) const;
  std::array<double, 2> constraints(std::span<const double> theta) const;
  // Row-major 2 x dim Jacobian of (c1, c2).
  void constraint_jacobian(std::span<const double> theta, std::span<double> jac) const;
  void bounds(std::vector<double>& lower, std::vector<double>& upper) const;
};

// Analytic gradient of the area objective at an angle vector.
std::vector<double> objective_gradient(const AngleVector& a);

// Norm of the objective gradient after removing its component in the span of
// the two constraint gradients (least-squares multipliers).
double tangent_gradient_norm(const AngleVector& a);

struct NlpOptions {
  int multistart = 4;
  std::uint64_t seed = 0;
  double constraint_tol = 1e-10;
  double kkt_tol = 1e-8;
  int max_outer = 200;
  int max_inner = 3000;
  double initial_penalty = 10.0;
  double jitter = 0.01;   // relative perturbation of the jittered starts
  bool newton_polish = true;
};

struct NlpDiagnostics {
  double c1 = 0.0;
  double c2 = 0.0;
  double kkt_norm = 0.0;
  std::array<double, 2> multipliers{};
  double penalty = 0.0;
  int outer_iterations = 0;
  int inner_iterations = 0;
  int polish_steps = 0;
  int starts = 0;
  int best_start = 0;
  double start_spread = 0.0;  // max area difference across feasible starts
  std::string message;
};

struct NlpResult {
  AngleVector angles;
  double area = 0.0;
  NlpDiagnostics diagnostics;
};

// Augmented-Lagrangian solve of the problem above with a projected L-BFGS
// inner loop and an optional Newton step on the KKT system at the end. The
// default start is the expansion of the theorem polygon Q_n. Throws
// DomainError for bad n and OptimizationFailure when no start reaches
// constraint residuals below 1e-8.
NlpResult solve_full_nlp(int n, const std::optional<AngleVector>& start = std::nullopt,
                         const NlpOptions& options = {});

}  // namespace smallpoly
