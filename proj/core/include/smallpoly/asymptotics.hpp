#pragma once

#include <array>
#include <string>
#include <vector>

namespace smallpoly {

// The n^-3 coefficient of the deficit pi/4 - A(Q_{n,r}) for large n is
// q_r = min P_r / 192, where P_r is a cubic in the scaled limits
// a = n alpha / pi, b_i = n beta_i / pi, c_i = n gamma_i / pi.
struct Monomial {
  double coefficient = 0.0;
  std::array<int, 3> powers{};  // exponents of (a, b_1, c_1)
};

struct CubicObjective {
  int r = 0;
  std::vector<Monomial> terms;
  std::vector<double> lower;  // a in [0,1], b in [0,2], c in [0,1/3]
  std::vector<double> upper;

  int dim() const { return static_cast<int>(lower.size()); }
  double value(const std::vector<double>& x) const;
  std::vector<double> gradient(const std::vector<double>& x) const;
  std::vector<double> hessian(const std::vector<double>& x) const;  // row-major
};

// r must be 1, 2 or 3.
CubicObjective cubic_objective(int r);

struct CubicMinimum {
  int r = 0;
  double q = 0.0;
  std::vector<double> point;  // (a), (a, b_1) or (a, b_1, c_1)
  double pg_norm = 0.0;
};

CubicMinimum minimize_cubic(int r);

// Closed forms for r = 1 and the leading n^-3 constant of the upper bound.
double q1_closed_form();      // (5545 - 456 sqrt(114)) / 5808
double a1_closed_form();      // (2 sqrt(114) - 7) / 22
double prior_gap_constant();  // (5303 - 456 sqrt(114)) / 5808
inline constexpr double kQ0 = 7.0 / 48.0;

// Rational coefficient stored as decimal strings (the numerators need more
// than 64 bits). Evaluated in double.
struct Rational {
  std::string numerator;
  std::string denominator;
  double to_double() const;
};

// Leading coefficient first.
const std::vector<Rational>& q2_certificate();
const std::vector<Rational>& q3_certificate();

// Compensated Horner-free evaluation sum c_i x^(deg-i).
double evaluate_certificate(const std::vector<Rational>& coefficients, double x);

struct CertificateReport {
  double q2 = 0.0;
  double q3 = 0.0;
  double quartic_residual = 0.0;
  double octic_residual = 0.0;
  double link_residual = 0.0;  // (q1 - 1/24) - (5303 - 456 sqrt 114)/5808
  double tolerance = 1e-12;
  bool quartic_ok = false;
  bool octic_ok = false;
  bool link_ok = false;
  bool passed() const { return quartic_ok && octic_ok && link_ok; }
};

CertificateReport verify_certificates();

struct AsymptoticFit {
  int r = 0;
  double q = 0.0;
  double d = 0.0;          // n^-4 coefficient in units of pi^4
  double residual = 0.0;   // RMS of the fit
  std::vector<int> grid;
  std::vector<double> scaled_deficit;  // (pi/4 - 5 pi^3/(48 n^2) - A) n^3 / pi^3
  // Scaled optimal free parameters n x / pi at the largest n, in the order
  // alpha, betas, gammas.
  std::vector<double> limits;
};

// Optimizes Q_{n,r} in scaled variables at every n of the grid and fits
// q + d pi / n by least squares. The grid must be strictly increasing, even,
// satisfy n >= 2r + 4 and hold at least two points.
AsymptoticFit estimate_q_numeric(int r, const std::vector<int>& grid);

// Scaled optimal deficit at a single n together with the scaled parameters.
double scaled_optimal_deficit(int n, int r, std::vector<double>* scaled_params = nullptr);

struct TheoremConstants {
  double q1 = 0.0;
  double q16 = 0.0;
  double delta = 0.0;          // q16 - 1/24
  double delta_published = 0.0733883168;
  double delta_bound = 8.0 / 109.0;
  double improvement = 0.0;    // q1 - q16
  double improvement_bound = 1.0 / 725.0;
  bool delta_matches = false;  // |delta - published| <= 1e-9
  bool delta_below_bound = false;
  bool improvement_above_bound = false;
  bool passed() const { return delta_matches && delta_below_bound && improvement_above_bound; }
};

TheoremConstants theorem_constants();

}  // namespace smallpoly
