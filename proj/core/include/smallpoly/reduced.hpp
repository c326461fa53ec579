#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "smallpoly/box_optimizer.hpp"
#include "smallpoly/geometry.hpp"

namespace smallpoly {

inline constexpr int kMaxTabulatedOrder = 16;

// Parameters of the reduced family Q_{n,r}. Free parameters are alpha,
// beta_1..beta_{floor(r/2)} and gamma_1..gamma_{ceil(r/2)-1}; the tail angle
// beta and the last gamma are eliminated by the angle-sum and closure
// constraints (see derive_parameters).
//
// Odd r reuses the r+1 scheme with beta_{(r+1)/2} tied to the tail angle beta.
struct ReducedParams {
  int n = 0;
  int r = 0;
  double alpha = 0.0;
  std::vector<double> betas;
  std::vector<double> gammas_free;
  double beta_derived = 0.0;
  double gamma_last_derived = 0.0;

  // r rounded up to even: the number of leading angles after theta_0 that
  // follow the beta_i +/- gamma_i pattern.
  int effective_order() const { return r + (r % 2); }
  int free_count() const { return r; }
};

// Cumulative angle phi = alpha + 2 * sum(beta_i) over the effective order
// (odd r counts the tail beta once more) and the vertex v_{r'} it ends on.
struct PhiState {
  double phi = 0.0;
  double x = 0.0;
  double y = 0.0;
};

// Throws DomainError unless n is even, n >= 6, r >= 0 and n >= 2r + 4. Orders
// above kMaxTabulatedOrder additionally need allow_large_order.
void check_reduced_domain(int n, int r, bool allow_large_order = false);

// Number of betas and free gammas for order r.
int free_beta_count(int r);
int free_gamma_count(int r);

// Tail angle from the angle-sum constraint. Throws DomainError if the result
// leaves (0, pi/3).
double solve_beta(const ReducedParams& p);

// Closure residual x_{r'} + sin(phi - beta/2) / (2 cos(beta/2)) as a function
// of the last gamma, with beta taken from p.beta_derived.
double reduced_closure_residual(const ReducedParams& p, double gamma_last);

// Last gamma from the closure constraint by bracketed root finding on
// [-pi/n, pi/n]. Requires p.beta_derived. Throws DomainError when the bracket
// has no sign change and OptimizationFailure when the residual stays above
// 1e-14.
double solve_gamma_last(const ReducedParams& p);

// Fills beta_derived and gamma_last_derived. For r = 0 there is no free gamma
// and feasibility forces alpha = pi/(2n-2); other alphas raise
// ConstraintViolation.
ReducedParams derive_parameters(ReducedParams p);

// Full angle vector theta_0..theta_{n/2-1}. Uses the derived fields as they
// are; call derive_parameters first.
AngleVector expand_angles(const ReducedParams& p);

PhiState phi_state(const ReducedParams& p);

// pi/4 - area, evaluated with the leading pi/4 cancelled symbolically so the
// small deficit keeps its relative precision for large n. Cost depends on r
// only.
double reduced_deficit(const ReducedParams& p);

// Same quantity in extended precision with the last gamma refined beyond
// double resolution. About 1e-21 absolute accuracy; used where n^3 times the
// deficit has to be resolved (asymptotic fits at n up to ~1e5).
double reduced_deficit_extended(const ReducedParams& p);

// Closed-form area: sum of the first r' triangle terms plus the geometric
// tail (n/2 - r' - 1)(sin beta - tan(beta/2)) - (x sin phi + y cos phi + 1/2)
// tan(beta/2).
double reduced_area(const ReducedParams& p);

// Free-parameter layout [alpha, betas..., gammas...] and its box:
// alpha in [pi/(2n-2), pi/n], beta_i in [pi/n, 2pi/n], gamma_i in [0, pi/n].
std::vector<double> pack_free(const ReducedParams& p);
ReducedParams unpack_free(int n, int r, std::span<const double> free);
void free_parameter_box(int n, int r, std::vector<double>& lower, std::vector<double>& upper);

// Starting point from the asymptotic optimum: alpha = 0.6587 pi/n and the
// tabulated b_i, c_i limits scaled by pi/n, clipped to the box.
std::vector<double> default_start(int n, int r);

struct ConstructOptions {
  int multistart = 8;
  std::uint64_t seed = 0;
  double tol = 1e-8;
  int max_iter = 2000;
  bool allow_large_order = false;
};

struct ConstructDiagnostics {
  bool converged = true;
  double pg_norm = 0.0;
  int iterations = 0;
  int evaluations = 0;
  double start_spread = 0.0;
  double closure_residual = 0.0;
  double angle_sum_residual = 0.0;
};

struct ConstructResult {
  SmallPolygon polygon;
  AreaReport report;
  ReducedParams params;
  AngleVector angles;
  double area = 0.0;  // reduced_area at the optimum
  ConstructDiagnostics diagnostics;
};

// Maximizes the reduced area of Q_{n,r} over the free-parameter box. Points
// where the elimination fails score a large negative value. Throws
// DomainError on bad (n, r) and OptimizationFailure if no feasible point is
// found.
ConstructResult construct_q(int n, int r, const ConstructOptions& options = {});

// Order used for the theorem polygon Q_n: n/2 - 2 up to n = 34, 16 after.
int theorem_order(int n);
ConstructResult construct_q_theorem(int n, const ConstructOptions& options = {});

}  // namespace smallpoly
