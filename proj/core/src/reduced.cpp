#include "smallpoly/reduced.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "smallpoly/errors.hpp"
#include "smallpoly/reference_data.hpp"
#include "smallpoly/roots.hpp"

namespace smallpoly {
namespace {

constexpr double kInfeasibleScore = -1e3;
constexpr double kGammaResidualTol = 1e-14;

// sin(x) - x without cancellation for small |x|.
template <typename T>
T sin_minus_x(T x) {
  if (std::abs(x) > T(0.25)) return std::sin(x) - x;
  const T x2 = x * x;
  T term = -x * x2 / T(6);
  T sum = term;
  for (int k = 2; k <= 11; ++k) {
    term *= -x2 / (T(2 * k) * T(2 * k + 1));
    sum += term;
  }
  return sum;
}

// tan(x) - x = (sin x - x cos x) / cos x, with sin x - x cos x written as
// (sin x - x) + 2 x sin^2(x/2).
template <typename T>
T tan_minus_x(T x) {
  const T s = std::sin(x / T(2));
  return (sin_minus_x(x) + T(2) * x * s * s) / std::cos(x);
}

// beta_i for i = 1..r'/2 (odd r appends the tail beta).
// beta_i for i = 1..r'/2 (odd r appends the tail beta).
std::vector<double> all_betas(const ReducedParams& p) {
  std::vector<double> b = p.betas;
  if (p.r % 2 == 1) b.push_back(p.beta_derived);
  return b;
}

// theta_0..theta_{r'}; the first r'+1 angles, which fix v_0..v_{r'+1}.
template <typename T = double>
std::vector<T> leading_angles(const ReducedParams& p, T gamma_last) {
  const std::vector<double> b = all_betas(p);
  std::vector<T> g(p.gammas_free.begin(), p.gammas_free.end());
  if (p.r > 0) g.push_back(gamma_last);
  std::vector<T> theta;
  theta.reserve(b.size() * 2 + 1);
  theta.push_back(p.alpha);
  for (std::size_t i = 0; i < b.size(); ++i) {
    theta.push_back(b[i] + g[i]);
    theta.push_back(b[i] - g[i]);
  }
  return theta;
}

template <typename T>
T closure_residual(const ReducedParams& p, T gamma_last) {
  const std::vector<T> theta = leading_angles<T>(p, gamma_last);
  const std::size_t rp = theta.size() - 1;
  T phi = 0;
  T x = 0;
  for (std::size_t j = 0; j < rp; ++j) {
    phi += theta[j];
    x += (j % 2 == 0) ? std::sin(phi) : -std::sin(phi);
  }
  phi += theta[rp];
  const T half_beta = T(p.beta_derived) / 2;
  return x + std::sin(phi - half_beta) / (2 * std::cos(half_beta));
}

void check_shapes(const ReducedParams& p) {
  if (static_cast<int>(p.betas.size()) != free_beta_count(p.r) ||
      static_cast<int>(p.gammas_free.size()) != free_gamma_count(p.r)) {
    throw DomainError("reduced parameters: expected " + std::to_string(free_beta_count(p.r)) +
                      " betas and " + std::to_string(free_gamma_count(p.r)) +
                      " free gammas for r = " + std::to_string(p.r));
  }
}

}  // namespace

void check_reduced_domain(int n, int r, bool allow_large_order) {
  if (n < 6 || n % 2 != 0) {
    throw DomainError("n must be even and >= 6, got " + std::to_string(n));
  }
  if (r < 0) throw DomainError("r must be non-negative, got " + std::to_string(r));
  if (n < 2 * r + 4) {
    throw DomainError("need n >= 2r + 4, got n = " + std::to_string(n) +
                      ", r = " + std::to_string(r));
  }
  if (r > kMaxTabulatedOrder && !allow_large_order) {
    throw DomainError("r = " + std::to_string(r) + " exceeds " +
                      std::to_string(kMaxTabulatedOrder) + " without allow_large_order");
  }
}

int free_beta_count(int r) { return r / 2; }
int free_gamma_count(int r) { return r == 0 ? 0 : (r + 1) / 2 - 1; }

double solve_beta(const ReducedParams& p) {
  check_reduced_domain(p.n, p.r, true);
  check_shapes(p);
  double lead = p.alpha;
  for (double b : p.betas) lead += 2.0 * b;
  const double tail_count = (p.r % 2 == 0) ? p.n / 2 - p.r - 1 : p.n / 2 - p.r;
  const double beta = (kPi / 2.0 - lead) / tail_count;
  if (!(beta > 0.0 && beta < kPi / 3.0)) {
    throw DomainError("derived beta = " + std::to_string(beta) + " outside (0, pi/3)");
  }
  return beta;
}

double reduced_closure_residual(const ReducedParams& p, double gamma_last) {
  return closure_residual<double>(p, gamma_last);
}

double solve_gamma_last(const ReducedParams& p) {
  check_reduced_domain(p.n, p.r, true);
  check_shapes(p);
  if (p.r == 0) throw DomainError("r = 0 has no gamma to solve for");
  const double bound = kPi / p.n;
  const RootResult root = find_root(
      [&](double g) { return reduced_closure_residual(p, g); }, -bound, bound,
      RootOptions{0.0, 200});
  if (std::abs(root.residual) > kGammaResidualTol) {
    throw OptimizationFailure("closure residual " + std::to_string(root.residual) +
                                  " above tolerance after root finding",
                              {root.root}, root.residual, {root.residual});
  }
  return root.root;
}

ReducedParams derive_parameters(ReducedParams p) {
  p.beta_derived = solve_beta(p);
  if (p.r == 0) {
    p.gamma_last_derived = 0.0;
    const double res = reduced_closure_residual(p, 0.0);
    if (std::abs(res) > kFeasibilityTol) {
      throw ConstraintViolation("r = 0 closes only at alpha = pi/(2n-2); residual " +
                                    std::to_string(res),
                                res);
    }
    return p;
  }
  p.gamma_last_derived = solve_gamma_last(p);
  return p;
}

AngleVector expand_angles(const ReducedParams& p) {
  check_reduced_domain(p.n, p.r, true);
  check_shapes(p);
  AngleVector a;
  a.n = p.n;
  a.theta = leading_angles(p, p.gamma_last_derived);
  a.theta.resize(static_cast<std::size_t>(p.n / 2), p.beta_derived);
  for (std::size_t k = 0; k < a.theta.size(); ++k) {
    const double t = a.theta[k];
    if (!(t >= 0.0 && t <= kPi / 3.0)) {
      throw DomainError("expanded theta_" + std::to_string(k) + " = " + std::to_string(t) +
                        " outside [0, pi/3]");
    }
  }
  return a;
}

PhiState phi_state(const ReducedParams& p) {
  const std::vector<double> theta = leading_angles(p, p.gamma_last_derived);
  const std::size_t rp = theta.size() - 1;
  PhiState s;
  for (std::size_t j = 0; j < rp; ++j) {
    s.phi += theta[j];
    const double sign = (j % 2 == 0) ? 1.0 : -1.0;
    s.x += sign * std::sin(s.phi);
    s.y += sign * std::cos(s.phi);
  }
  s.phi += theta[rp];
  return s;
}

// pi/4 - area in precision T. With refine, the last gamma is re-solved past
// double resolution by Newton steps on the closure residual.
template <typename T>
T deficit_impl(const ReducedParams& p, bool refine) {
  check_reduced_domain(p.n, p.r, true);
  check_shapes(p);
  T gamma = p.gamma_last_derived;
  if (refine && p.r > 0) {
    const T h = T(1e-12);
    for (int it = 0; it < 2; ++it) {
      const T slope =
          (closure_residual<T>(p, gamma + h) - closure_residual<T>(p, gamma - h)) / (2 * h);
      if (slope == 0) break;
      gamma -= closure_residual<T>(p, gamma) / slope;
    }
  }
  const std::vector<T> theta = leading_angles<T>(p, gamma);
  const std::size_t rp = theta.size() - 1;

  // v_0 .. v_{r'+1}
  std::vector<T> vx(rp + 2, 0), vy(rp + 2, 0);
  T phi = 0;
  for (std::size_t j = 0; j <= rp; ++j) {
    phi += theta[j];
    const T sign = (j % 2 == 0) ? 1 : -1;
    vx[j + 1] = vx[j] + sign * std::sin(phi);
    vy[j + 1] = vy[j] + sign * std::cos(phi);
  }

  T triangles = std::sin(static_cast<T>(p.alpha));
  for (std::size_t k = 2; k <= rp; ++k) {
    triangles += vx[k + 1] * vy[k - 1] - vy[k + 1] * vx[k - 1];
  }

  const T beta = p.beta_derived;
  const T tail = static_cast<T>(p.n / 2) - static_cast<T>(rp) - 1;
  const T t_half = std::tan(beta / 2);
  const T edge = vx[rp] * std::sin(phi) + vy[rp] * std::cos(phi) + T(0.5);
  // tail * (sin b - tan(b/2)) = tail * b / 2 + tail * g(b), and
  // tail * b = pi/2 - phi by the angle-sum constraint.
  const T curvature = sin_minus_x(beta) - tan_minus_x(beta / 2);
  return phi / 2 - triangles - tail * curvature + edge * t_half;
}

double reduced_deficit(const ReducedParams& p) { return deficit_impl<double>(p, false); }

double reduced_deficit_extended(const ReducedParams& p) {
  return static_cast<double>(deficit_impl<long double>(p, true));
}

double reduced_area(const ReducedParams& p) { return kPi / 4.0 - reduced_deficit(p); }

std::vector<double> pack_free(const ReducedParams& p) {
  std::vector<double> x;
  x.reserve(static_cast<std::size_t>(p.free_count()));
  if (p.r == 0) return x;
  x.push_back(p.alpha);
  x.insert(x.end(), p.betas.begin(), p.betas.end());
  x.insert(x.end(), p.gammas_free.begin(), p.gammas_free.end());
  return x;
}

ReducedParams unpack_free(int n, int r, std::span<const double> free) {
  ReducedParams p;
  p.n = n;
  p.r = r;
  if (r == 0) {
    p.alpha = kPi / (2.0 * n - 2.0);
    return p;
  }
  if (static_cast<int>(free.size()) != r) {
    throw DomainError("expected " + std::to_string(r) + " free parameters, got " +
                      std::to_string(free.size()));
  }
  const auto nb = static_cast<std::size_t>(free_beta_count(r));
  const auto ng = static_cast<std::size_t>(free_gamma_count(r));
  p.alpha = free[0];
  p.betas.assign(free.begin() + 1, free.begin() + 1 + static_cast<std::ptrdiff_t>(nb));
  p.gammas_free.assign(free.begin() + 1 + static_cast<std::ptrdiff_t>(nb),
                       free.begin() + 1 + static_cast<std::ptrdiff_t>(nb + ng));
  return p;
}

void free_parameter_box(int n, int r, std::vector<double>& lower, std::vector<double>& upper) {
  lower.clear();
  upper.clear();
  if (r == 0) return;
  const double step = kPi / n;
  lower.push_back(kPi / (2.0 * n - 2.0));
  upper.push_back(step);
  for (int i = 0; i < free_beta_count(r); ++i) {
    lower.push_back(step);
    upper.push_back(2.0 * step);
  }
  for (int i = 0; i < free_gamma_count(r); ++i) {
    lower.push_back(0.0);
    upper.push_back(step);
  }
}

std::vector<double> default_start(int n, int r) {
  std::vector<double> lower;
  std::vector<double> upper;
  free_parameter_box(n, r, lower, upper);
  if (r == 0) return {};

  const auto& row = reference::asymptotic_row(std::min(r, kMaxTabulatedOrder));
  const double step = kPi / n;
  std::vector<double> x;
  x.push_back(0.6587 * step);
  for (int i = 0; i < free_beta_count(r); ++i) {
    const auto idx = static_cast<std::size_t>(i);
    x.push_back((idx < row.b.size() ? row.b[idx] : 1.0) * step);
  }
  for (int i = 0; i < free_gamma_count(r); ++i) {
    const auto idx = static_cast<std::size_t>(i);
    x.push_back((idx < row.c.size() ? row.c[idx] : 0.0) * step);
  }
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = std::clamp(x[i], lower[i], upper[i]);
  return x;
}

ConstructResult construct_q(int n, int r, const ConstructOptions& options) {
  check_reduced_domain(n, r, options.allow_large_order);

  ConstructResult result;
  ReducedParams best;

  if (r == 0) {
    best = derive_parameters(unpack_free(n, 0, {}));
  } else {
    BoxProblem problem;
    problem.dim = r;
    free_parameter_box(n, r, problem.lower, problem.upper);
    problem.objective = [n, r](std::span<const double> x) {
      try {
        const ReducedParams p = derive_parameters(unpack_free(n, r, x));
        (void)expand_angles(p);
        return reduced_area(p);
      } catch (const std::exception&) {
        return kInfeasibleScore;
      }
    };
    problem.tol = options.tol;
    problem.max_iter = options.max_iter;
    for (int i = 1; i <= options.multistart; ++i) {
      problem.multistart_seeds.push_back(options.seed * 0x9E3779B97F4A7C15ULL +
                                         static_cast<std::uint64_t>(i));
    }
    const std::vector<double> start = default_start(n, r);
    const BoxResult box = maximize_box(problem, start);
    if (!(box.value > kInfeasibleScore / 2.0)) {
      throw OptimizationFailure("no feasible parameter point found for Q_{" + std::to_string(n) +
                                    "," + std::to_string(r) + "}",
                                box.x, box.value, {});
    }
    best = derive_parameters(unpack_free(n, r, box.x));
    result.diagnostics.converged = box.diagnostics.converged;
    result.diagnostics.pg_norm = box.diagnostics.pg_norm;
    result.diagnostics.iterations = box.diagnostics.iterations;
    result.diagnostics.evaluations = box.diagnostics.evaluations;
    result.diagnostics.start_spread = box.diagnostics.start_spread;
  }

  result.params = best;
  result.angles = expand_angles(best);
  result.area = reduced_area(best);
  result.polygon = vertices_from_angles(result.angles);
  result.report = validate(result.polygon);
  result.diagnostics.closure_residual = closure_residual(result.angles);
  result.diagnostics.angle_sum_residual = angle_sum_residual(result.angles);
  return result;
}

int theorem_order(int n) { return n <= 34 ? n / 2 - 2 : kMaxTabulatedOrder; }

ConstructResult construct_q_theorem(int n, const ConstructOptions& options) {
  if (n < 6 || n % 2 != 0) {
    throw DomainError("n must be even and >= 6, got " + std::to_string(n));
  }
  return construct_q(n, theorem_order(n), options);
}

}  // namespace smallpoly
