#include "smallpoly/nlp.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "smallpoly/box_optimizer.hpp"
#include "smallpoly/errors.hpp"
#include "smallpoly/reduced.hpp"

namespace smallpoly {
namespace {

constexpr double kStallTol = 1e-8;

double cross(double ax, double ay, double bx, double by) { return ax * by - ay * bx; }

double max_abs(const std::array<double, 2>& c) { return std::max(std::abs(c[0]), std::abs(c[1])); }

void check_nlp_n(int n) {
  if (n < 6 || n % 2 != 0 || n > 512) {
    throw DomainError("full problem needs even n in [6, 512], got " + std::to_string(n));
  }
}

// grad(-F) + J^T lambda, the stationarity residual for the sign convention of
// the augmented Lagrangian below.
void lagrangian_gradient(const NlpProblem& prob, std::span<const double> theta,
                         const std::array<double, 2>& lambda, std::span<double> out) {
  const std::size_t m = prob.dim();
  std::vector<double> jac(2 * m);
  prob.gradient(theta, out);
  prob.constraint_jacobian(theta, jac);
  for (std::size_t i = 0; i < m; ++i) {
    out[i] = -out[i] + lambda[0] * jac[i] + lambda[1] * jac[m + i];
  }
}

struct Candidate {
  std::vector<double> theta;
  double area = -std::numeric_limits<double>::infinity();
  double violation = std::numeric_limits<double>::infinity();
  std::array<double, 2> lambda{};
  double penalty = 0.0;
  int outer = 0;
  int inner = 0;
  int polish = 0;
  std::string message;
};

// Newton iterations on the KKT system [H J^T; J 0] with the Hessian of the
// Lagrangian from central differences of its analytic gradient. Only taken
// while every angle stays strictly inside its box (the bounds are inactive
// at the optima of interest) and the KKT residual keeps shrinking.
int newton_polish(const NlpProblem& prob, std::vector<double>& theta, std::array<double, 2>& lambda) {
  const std::size_t m = prob.dim();
  const auto dm = static_cast<Eigen::Index>(m);
  std::vector<double> lower;
  std::vector<double> upper;
  prob.bounds(lower, upper);

  const auto residual = [&](std::span<const double> th, const std::array<double, 2>& lam,
                            Eigen::VectorXd& r) {
    r.resize(dm + 2);
    std::vector<double> g(m);
    lagrangian_gradient(prob, th, lam, g);
    for (std::size_t i = 0; i < m; ++i) r(static_cast<Eigen::Index>(i)) = g[i];
    const auto c = prob.constraints(th);
    r(dm) = c[0];
    r(dm + 1) = c[1];
  };

  Eigen::VectorXd r;
  residual(theta, lambda, r);
  double norm = r.lpNorm<Eigen::Infinity>();
  int steps = 0;
  for (int iter = 0; iter < 12 && norm > 1e-15; ++iter) {
    Eigen::MatrixXd K = Eigen::MatrixXd::Zero(dm + 2, dm + 2);
    std::vector<double> probe = theta;
    std::vector<double> gp(m);
    std::vector<double> gm(m);
    constexpr double h = 1e-6;
    for (std::size_t j = 0; j < m; ++j) {
      probe[j] = theta[j] + h;
      lagrangian_gradient(prob, probe, lambda, gp);
      probe[j] = theta[j] - h;
      lagrangian_gradient(prob, probe, lambda, gm);
      probe[j] = theta[j];
      for (std::size_t i = 0; i < m; ++i) {
        K(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = (gp[i] - gm[i]) / (2.0 * h);
      }
    }
    const Eigen::MatrixXd H = K.topLeftCorner(dm, dm);
    K.topLeftCorner(dm, dm) = 0.5 * (H + H.transpose());
    std::vector<double> jac(2 * m);
    prob.constraint_jacobian(theta, jac);
    for (std::size_t i = 0; i < m; ++i) {
      const auto ii = static_cast<Eigen::Index>(i);
      K(ii, dm) = jac[i];
      K(ii, dm + 1) = jac[m + i];
      K(dm, ii) = jac[i];
      K(dm + 1, ii) = jac[m + i];
    }
    const Eigen::VectorXd step = K.fullPivLu().solve(-r);
    if (!step.allFinite()) break;

    std::vector<double> trial(m);
    bool inside = true;
    for (std::size_t i = 0; i < m; ++i) {
      trial[i] = theta[i] + step(static_cast<Eigen::Index>(i));
      inside = inside && trial[i] > lower[i] && trial[i] < upper[i];
    }
    if (!inside) break;
    std::array<double, 2> trial_lambda{lambda[0] + step(dm), lambda[1] + step(dm + 1)};
    Eigen::VectorXd r_trial;
    residual(trial, trial_lambda, r_trial);
    const double trial_norm = r_trial.lpNorm<Eigen::Infinity>();
    if (!(trial_norm < norm)) break;
    theta = std::move(trial);
    lambda = trial_lambda;
    r = r_trial;
    norm = trial_norm;
    ++steps;
  }
  return steps;
}

Candidate augmented_lagrangian(const NlpProblem& prob, std::vector<double> theta,
                               const NlpOptions& options) {
  const std::size_t m = prob.dim();
  std::vector<double> lower;
  std::vector<double> upper;
  prob.bounds(lower, upper);
  for (std::size_t i = 0; i < m; ++i) theta[i] = std::clamp(theta[i], lower[i], upper[i]);

  Candidate cand;
  std::array<double, 2> lambda{0.0, 0.0};
  double mu = options.initial_penalty;
  double prev_violation = std::numeric_limits<double>::infinity();
  std::vector<double> jac(2 * m);

  for (int outer = 1; outer <= options.max_outer; ++outer) {
    const auto merit = [&](std::span<const double> th, std::span<double> grad) {
      const auto c = prob.constraints(th);
      prob.gradient(th, grad);
      prob.constraint_jacobian(th, jac);
      const double l1 = lambda[0] + mu * c[0];
      const double l2 = lambda[1] + mu * c[1];
      for (std::size_t i = 0; i < m; ++i) grad[i] = -grad[i] + l1 * jac[i] + l2 * jac[m + i];
      return -prob.objective(th) + lambda[0] * c[0] + lambda[1] * c[1] +
             0.5 * mu * (c[0] * c[0] + c[1] * c[1]);
    };
    BoundedOptions inner;
    inner.pg_tol = std::max(0.1 * options.kkt_tol, 1e-3 * std::pow(0.1, outer));
    inner.max_iter = options.max_inner;
    inner.memory = 10;
    const BoundedResult res = minimize_bounded(merit, theta, lower, upper, inner);
    theta = res.x;
    cand.inner += res.iterations;
    cand.outer = outer;

    const auto c = prob.constraints(theta);
    const double violation = max_abs(c);
    lambda[0] += mu * c[0];
    lambda[1] += mu * c[1];
    if (violation <= options.constraint_tol && res.pg_norm <= options.kkt_tol) {
      cand.message = "converged";
      break;
    }
    if (violation > 0.25 * prev_violation) mu *= 10.0;
    prev_violation = violation;
    if (mu > 1e14) {
      cand.message = "penalty limit reached";
      break;
    }
  }
  if (cand.message.empty()) cand.message = "outer iteration limit reached";

  if (options.newton_polish) cand.polish = newton_polish(prob, theta, lambda);

  cand.violation = max_abs(prob.constraints(theta));
  cand.area = prob.objective(theta);
  cand.theta = std::move(theta);
  cand.lambda = lambda;
  cand.penalty = mu;
  return cand;
}

}  // namespace

double NlpProblem::objective(std::span<const double> theta) const {
  const std::size_t m = dim();
  double phi = 0.0;
  double x = 0.0;
  double y = 0.0;
  // Rolling window over v_{k-1}, v_k, v_{k+1}.
  std::vector<double> vx(m + 1);
  std::vector<double> vy(m + 1);
  for (std::size_t j = 0; j < m; ++j) {
    phi += theta[j];
    const double s = (j % 2 == 0) ? 1.0 : -1.0;
    x += s * std::sin(phi);
    y += s * std::cos(phi);
    vx[j + 1] = x;
    vy[j + 1] = y;
  }
  double area = std::sin(theta[0]);
  for (std::size_t k = 2; k < m; ++k) area += cross(vx[k + 1], vy[k + 1], vx[k - 1], vy[k - 1]);
  return area;
}

void NlpProblem::gradient(std::span<const double> theta, std::span<double> grad) const {
  const std::size_t m = dim();
  std::vector<double> phi(m);
  std::vector<double> vx(m + 1, 0.0);
  std::vector<double> vy(m + 1, 0.0);
  double acc = 0.0;
  for (std::size_t j = 0; j < m; ++j) {
    acc += theta[j];
    phi[j] = acc;
    const double s = (j % 2 == 0) ? 1.0 : -1.0;
    vx[j + 1] = vx[j] + s * std::sin(acc);
    vy[j + 1] = vy[j] + s * std::cos(acc);
  }

  // before[k] = sum_{k'=k}^{m-1} v_{k'-1}, after[k] = sum_{k'=k}^{m-1} v_{k'+1},
  // both over triangle indices k' >= 2.
  std::vector<double> bx(m + 2, 0.0), by(m + 2, 0.0), ax(m + 2, 0.0), ay(m + 2, 0.0);
  for (std::size_t k = m; k-- > 2;) {
    bx[k] = bx[k + 1] + vx[k - 1];
    by[k] = by[k + 1] + vy[k - 1];
    ax[k] = ax[k + 1] + vx[k + 1];
    ay[k] = ay[k + 1] + vy[k + 1];
  }

  // dF/dphi_j, then suffix-summed into dF/dtheta_i.
  double suffix = 0.0;
  for (std::size_t j = m; j-- > 0;) {
    const double s = (j % 2 == 0) ? 1.0 : -1.0;
    const double wx = s * std::cos(phi[j]);
    const double wy = -s * std::sin(phi[j]);
    double d = (j == 0) ? std::cos(phi[0]) : 0.0;
    const std::size_t kb = std::max<std::size_t>(2, j);
    if (kb <= m - 1) d += cross(wx, wy, bx[kb], by[kb]);
    const std::size_t ka = std::max<std::size_t>(2, j + 2);
    if (ka <= m - 1) d += cross(ax[ka], ay[ka], wx, wy);
    suffix += d;
    grad[j] = suffix;
  }
}

std::array<double, 2> NlpProblem::constraints(std::span<const double> theta) const {
  const std::size_t m = dim();
  double sum = 0.0;
  for (double t : theta) sum += t;
  double phi = 0.0;
  double x = 0.0;
  for (std::size_t j = 0; j + 1 < m; ++j) {
    phi += theta[j];
    x += (j % 2 == 0) ? std::sin(phi) : -std::sin(phi);
  }
  const double target = (m % 2 == 0) ? 0.5 : -0.5;
  return {sum - kPi / 2.0, x - target};
}

void NlpProblem::constraint_jacobian(std::span<const double> theta, std::span<double> jac) const {
  const std::size_t m = dim();
  for (std::size_t i = 0; i < m; ++i) jac[i] = 1.0;
  std::vector<double> phi(m);
  double acc = 0.0;
  for (std::size_t j = 0; j < m; ++j) {
    acc += theta[j];
    phi[j] = acc;
  }
  double suffix = 0.0;
  jac[m + m - 1] = 0.0;
  for (std::size_t j = m - 1; j-- > 0;) {
    suffix += ((j % 2 == 0) ? 1.0 : -1.0) * std::cos(phi[j]);
    jac[m + j] = suffix;
  }
}

void NlpProblem::bounds(std::vector<double>& lower, std::vector<double>& upper) const {
  lower.assign(dim(), 0.0);
  upper.assign(dim(), kPi / 3.0);
  upper[0] = kPi / 6.0;
}

std::vector<double> objective_gradient(const AngleVector& a) {
  check_angle_domain(a);
  NlpProblem prob{a.n};
  std::vector<double> g(a.theta.size());
  prob.gradient(a.theta, g);
  return g;
}

double tangent_gradient_norm(const AngleVector& a) {
  check_angle_domain(a);
  NlpProblem prob{a.n};
  const std::size_t m = prob.dim();
  std::vector<double> g(m);
  std::vector<double> jac(2 * m);
  prob.gradient(a.theta, g);
  prob.constraint_jacobian(a.theta, jac);
  Eigen::Map<const Eigen::VectorXd> gv(g.data(), static_cast<Eigen::Index>(m));
  Eigen::Map<const Eigen::Matrix<double, 2, Eigen::Dynamic, Eigen::RowMajor>> J(
      jac.data(), 2, static_cast<Eigen::Index>(m));
  const Eigen::Vector2d lambda = (J * J.transpose()).ldlt().solve(J * gv);
  return (gv - J.transpose() * lambda).lpNorm<Eigen::Infinity>();
}

NlpResult solve_full_nlp(int n, const std::optional<AngleVector>& start,
                         const NlpOptions& options) {
  check_nlp_n(n);
  NlpProblem prob{n};
  const std::size_t m = prob.dim();

  std::vector<double> base;
  if (start) {
    if (start->n != n || start->theta.size() != m) {
      throw DomainError("start angle vector does not match n = " + std::to_string(n));
    }
    base = start->theta;
  } else {
    base = construct_q_theorem(n).angles.theta;
  }

  std::vector<std::vector<double>> starts{base};
  for (int k = 1; k < std::max(1, options.multistart); ++k) {
    std::mt19937_64 rng(options.seed * 0x9E3779B97F4A7C15ULL + static_cast<std::uint64_t>(k));
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::vector<double> s = base;
    for (double& t : s) t *= 1.0 + options.jitter * unit(rng);
    starts.push_back(std::move(s));
  }

  std::vector<Candidate> cands;
  cands.reserve(starts.size());
  for (const auto& s : starts) cands.push_back(augmented_lagrangian(prob, s, options));

  int best = -1;
  for (std::size_t k = 0; k < cands.size(); ++k) {
    if (cands[k].violation > options.constraint_tol) continue;
    if (best < 0) {
      best = static_cast<int>(k);
      continue;
    }
    const Candidate& b = cands[static_cast<std::size_t>(best)];
    const double diff = cands[k].area - b.area;
    if (diff > 1e-15 || (std::abs(diff) <= 1e-15 && cands[k].violation < b.violation)) {
      best = static_cast<int>(k);
    }
  }
  if (best < 0) {
    // Fall back to the least infeasible start if it is within the stall band.
    std::size_t least = 0;
    for (std::size_t k = 1; k < cands.size(); ++k) {
      if (cands[k].violation < cands[least].violation) least = k;
    }
    if (cands[least].violation > kStallTol) {
      const Candidate& c = cands[least];
      const auto res = prob.constraints(c.theta);
      throw OptimizationFailure("constraint residuals stalled at " + std::to_string(c.violation) +
                                    " (multipliers " + std::to_string(c.lambda[0]) + ", " +
                                    std::to_string(c.lambda[1]) + ")",
                                c.theta, c.area, {res[0], res[1]});
    }
    best = static_cast<int>(least);
  }

  const Candidate& win = cands[static_cast<std::size_t>(best)];
  NlpResult out;
  out.angles.n = n;
  out.angles.theta = win.theta;
  out.area = win.area;
  const auto c = prob.constraints(win.theta);
  out.diagnostics.c1 = c[0];
  out.diagnostics.c2 = c[1];
  out.diagnostics.kkt_norm = tangent_gradient_norm(out.angles);
  out.diagnostics.multipliers = win.lambda;
  out.diagnostics.penalty = win.penalty;
  out.diagnostics.outer_iterations = win.outer;
  out.diagnostics.inner_iterations = win.inner;
  out.diagnostics.polish_steps = win.polish;
  out.diagnostics.starts = static_cast<int>(cands.size());
  out.diagnostics.best_start = best;
  out.diagnostics.message = win.message;
  for (const auto& cand : cands) {
    if (cand.violation <= options.constraint_tol) {
      out.diagnostics.start_spread =
          std::max(out.diagnostics.start_spread, std::abs(cand.area - win.area));
    }
  }
  return out;
}

}  // namespace smallpoly
