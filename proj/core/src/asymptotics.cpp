#include "smallpoly/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

#include <Eigen/Dense>

#include "smallpoly/box_optimizer.hpp"
#include "smallpoly/errors.hpp"
#include "smallpoly/geometry.hpp"
#include "smallpoly/reduced.hpp"
#include "smallpoly/reference_data.hpp"

namespace smallpoly {
namespace {

constexpr double kInfeasibleScore = -1e6;

double ipow(double x, int k) {
  double r = 1.0;
  for (int i = 0; i < k; ++i) r *= x;
  return r;
}

// Neumaier's compensated sum.
class CompensatedSum {
 public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace

double CubicObjective::value(const std::vector<double>& x) const {
  CompensatedSum s;
  for (const Monomial& t : terms) {
    double v = t.coefficient;
    for (std::size_t i = 0; i < x.size(); ++i) v *= ipow(x[i], t.powers[i]);
    s.add(v);
  }
  return s.value();
}

std::vector<double> CubicObjective::gradient(const std::vector<double>& x) const {
  std::vector<double> g(x.size(), 0.0);
  for (const Monomial& t : terms) {
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (t.powers[i] == 0) continue;
      double v = t.coefficient * t.powers[i];
      for (std::size_t j = 0; j < x.size(); ++j) {
        v *= ipow(x[j], t.powers[j] - (i == j ? 1 : 0));
      }
      g[i] += v;
    }
  }
  return g;
}

std::vector<double> CubicObjective::hessian(const std::vector<double>& x) const {
  const std::size_t d = x.size();
  std::vector<double> h(d * d, 0.0);
  for (const Monomial& t : terms) {
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) {
        std::array<int, 3> pw = t.powers;
        double v = t.coefficient * pw[i];
        --pw[i];
        v *= pw[j];
        --pw[j];
        if (v == 0.0) continue;
        for (std::size_t k = 0; k < d; ++k) v *= ipow(x[k], pw[k]);
        h[i * d + j] += v;
      }
    }
  }
  return h;
}

CubicObjective cubic_objective(int r) {
  CubicObjective c;
  c.r = r;
  switch (r) {
    case 1:
      // 88a^3 + 84a^2 - 222a + 107
      c.terms = {{88, {3, 0, 0}}, {84, {2, 0, 0}}, {-222, {1, 0, 0}}, {107, {0, 0, 0}}};
      c.lower = {0.0};
      c.upper = {1.0};
      break;
    case 2:
      // 88a^3 + 12a^2(8b-1) - 6a(16b^2+21) + 128b^3 - 48b^2 - 216b + 243
      c.terms = {{88, {3, 0, 0}},   {96, {2, 1, 0}},  {-12, {2, 0, 0}},  {-96, {1, 2, 0}},
                 {-126, {1, 0, 0}}, {128, {0, 3, 0}}, {-48, {0, 2, 0}},  {-216, {0, 1, 0}},
                 {243, {0, 0, 0}}};
      c.lower = {0.0, 0.0};
      c.upper = {1.0, 2.0};
      break;
    case 3:
      // 88a^3 + 12a^2(16b - 12c + 7) - 6a(32b^2 + 64bc - 80c^2 + 56c + 37)
      //   + 128b^3 + 192b^2c + 384bc^2 - 384c^3 + 336c^2 - 240b + 204c + 267
      c.terms = {{88, {3, 0, 0}},   {192, {2, 1, 0}},  {-144, {2, 0, 1}}, {84, {2, 0, 0}},
                 {-192, {1, 2, 0}}, {-384, {1, 1, 1}}, {480, {1, 0, 2}},  {-336, {1, 0, 1}},
                 {-222, {1, 0, 0}}, {128, {0, 3, 0}},  {192, {0, 2, 1}},  {384, {0, 1, 2}},
                 {-384, {0, 0, 3}}, {336, {0, 0, 2}},  {-240, {0, 1, 0}}, {204, {0, 0, 1}},
                 {267, {0, 0, 0}}};
      c.lower = {0.0, 0.0, 0.0};
      c.upper = {1.0, 2.0, 1.0 / 3.0};
      break;
    default:
      throw DomainError("explicit cubic objectives exist for r = 1, 2, 3 only; got " +
                        std::to_string(r));
  }
  return c;
}

CubicMinimum minimize_cubic(int r) {
  const CubicObjective cubic = cubic_objective(r);
  BoxProblem p;
  p.dim = cubic.dim();
  p.lower = cubic.lower;
  p.upper = cubic.upper;
  p.objective = [&](std::span<const double> x) {
    return -cubic.value(std::vector<double>(x.begin(), x.end()));
  };
  p.gradient = [&](std::span<const double> x, std::span<double> g) {
    const auto grad = cubic.gradient(std::vector<double>(x.begin(), x.end()));
    for (std::size_t i = 0; i < grad.size(); ++i) g[i] = -grad[i];
  };
  p.tol = 1e-13;
  p.max_iter = 5000;
  p.jitter_fraction = 0.45;
  for (std::uint64_t s = 1; s <= 12; ++s) p.multistart_seeds.push_back(s);

  std::vector<double> centre(cubic.lower.size());
  for (std::size_t i = 0; i < centre.size(); ++i) {
    centre[i] = 0.5 * (cubic.lower[i] + cubic.upper[i]);
  }
  const BoxResult best = maximize_box(p, centre);

  // Newton steps on the coordinates strictly inside the box.
  std::vector<double> x = best.x;
  const std::size_t d = x.size();
  for (int it = 0; it < 20; ++it) {
    const std::vector<double> g = cubic.gradient(x);
    const std::vector<double> h = cubic.hessian(x);
    std::vector<std::size_t> free;
    for (std::size_t i = 0; i < d; ++i) {
      if (x[i] > cubic.lower[i] && x[i] < cubic.upper[i]) free.push_back(i);
    }
    if (free.empty()) break;
    Eigen::MatrixXd hf(free.size(), free.size());
    Eigen::VectorXd gf(free.size());
    for (std::size_t a = 0; a < free.size(); ++a) {
      gf(static_cast<Eigen::Index>(a)) = g[free[a]];
      for (std::size_t b = 0; b < free.size(); ++b) {
        hf(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = h[free[a] * d + free[b]];
      }
    }
    const Eigen::LLT<Eigen::MatrixXd> llt(hf);
    if (llt.info() != Eigen::Success) break;
    const Eigen::VectorXd step = llt.solve(gf);
    std::vector<double> trial = x;
    for (std::size_t a = 0; a < free.size(); ++a) {
      trial[free[a]] = std::clamp(trial[free[a]] - step(static_cast<Eigen::Index>(a)),
                                  cubic.lower[free[a]], cubic.upper[free[a]]);
    }
    // Near the minimum the value is flat to rounding; judge by the gradient.
    const auto gnorm = [&](const std::vector<double>& y) {
      return projected_gradient_norm(y, cubic.gradient(y), cubic.lower, cubic.upper);
    };
    if (gnorm(trial) >= gnorm(x)) break;
    const bool done = step.lpNorm<Eigen::Infinity>() < 1e-15;
    x = trial;
    if (done) break;
  }

  const std::vector<double> g = cubic.gradient(x);
  CubicMinimum m;
  m.r = r;
  m.point = x;
  m.q = cubic.value(x) / 192.0;
  m.pg_norm = projected_gradient_norm(x, g, cubic.lower, cubic.upper);
  return m;
}

double q1_closed_form() { return (5545.0 - 456.0 * std::sqrt(114.0)) / 5808.0; }
double a1_closed_form() { return (2.0 * std::sqrt(114.0) - 7.0) / 22.0; }
double prior_gap_constant() { return (5303.0 - 456.0 * std::sqrt(114.0)) / 5808.0; }

double Rational::to_double() const {
  return std::strtod(numerator.c_str(), nullptr) / std::strtod(denominator.c_str(), nullptr);
}

const std::vector<Rational>& q2_certificate() {
  static const std::vector<Rational> c = {
      {"1", "1"},
      {"-70705", "15876"},
      {"269167127", "41150592"},
      {"-3381027871", "987614208"},
      {"737985313", "2341011456"},
  };
  return c;
}

const std::vector<Rational>& q3_certificate() {
  // The x^7 numerator is 3380671897604231941; the 18-digit truncation
  // 338067189760423194 leaves a residual of about 3.5e-6 at q3.
  static const std::vector<Rational> c = {
      {"1", "1"},
      {"-3380671897604231941", "232662255261540774"},
      {"1980606171874180754147", "22335576505107914304"},
      {"-158140620301705167575191", "536053836122589943296"},
      {"59647522303796634759434731", "102922336535537269112832"},
      {"-836103610314364495378933003", "1235068038426447229353984"},
      {"52675103710698128327456883067", "118566531688938934017982464"},
      {"-14538141342029184829034957803", "105392472612390163571539968"},
      {"442235633612728385344035304147", "40470709483157822811471347712"},
  };
  return c;
}

double evaluate_certificate(const std::vector<Rational>& coefficients, double x) {
  CompensatedSum s;
  const int degree = static_cast<int>(coefficients.size()) - 1;
  for (int i = 0; i <= degree; ++i) {
    s.add(coefficients[static_cast<std::size_t>(i)].to_double() * ipow(x, degree - i));
  }
  return s.value();
}

CertificateReport verify_certificates() {
  CertificateReport rep;
  rep.q2 = minimize_cubic(2).q;
  rep.q3 = minimize_cubic(3).q;
  rep.quartic_residual = evaluate_certificate(q2_certificate(), rep.q2);
  rep.octic_residual = evaluate_certificate(q3_certificate(), rep.q3);
  rep.link_residual = (q1_closed_form() - 1.0 / 24.0) - prior_gap_constant();
  rep.quartic_ok = std::abs(rep.quartic_residual) <= rep.tolerance;
  rep.octic_ok = std::abs(rep.octic_residual) <= rep.tolerance;
  rep.link_ok = std::abs(rep.link_residual) <= 1e-13;
  return rep;
}

double scaled_optimal_deficit(int n, int r, std::vector<double>* scaled_params) {
  check_reduced_domain(n, r, true);
  const double unit = kPi / n;
  const double n3 = static_cast<double>(n) * n * n;
  const double pi3 = kPi * kPi * kPi;
  const double second_order = 5.0 * pi3 / (48.0 * static_cast<double>(n) * n);

  const auto scaled = [&](const ReducedParams& p) {
    return (reduced_deficit_extended(p) - second_order) * (n3 / pi3);
  };

  if (r == 0) {
    if (scaled_params) scaled_params->clear();
    return scaled(derive_parameters(unpack_free(n, 0, {})));
  }

  BoxProblem box;
  box.dim = r;
  free_parameter_box(n, r, box.lower, box.upper);
  for (double& v : box.lower) v /= unit;
  for (double& v : box.upper) v /= unit;
  box.objective = [&](std::span<const double> s) {
    std::vector<double> x(s.begin(), s.end());
    for (double& v : x) v *= unit;
    try {
      const ReducedParams p = derive_parameters(unpack_free(n, r, x));
      return -scaled(p);
    } catch (const std::exception&) {
      return kInfeasibleScore;
    }
  };
  box.tol = 1e-10;
  box.max_iter = 3000;
  box.fd_step = 1e-4;
  box.fd_absolute = true;

  std::vector<double> start = default_start(n, r);
  for (double& v : start) v /= unit;
  const BoxResult best = maximize_box(box, start);
  if (!(best.value > kInfeasibleScore / 2.0)) {
    throw OptimizationFailure("no feasible point for the scaled problem at n = " +
                                  std::to_string(n),
                              best.x, best.value, {});
  }
  if (scaled_params) *scaled_params = best.x;
  return -best.value;
}

AsymptoticFit estimate_q_numeric(int r, const std::vector<int>& grid) {
  if (grid.size() < 2) throw DomainError("estimate_q_numeric: need at least two grid points");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    check_reduced_domain(grid[i], r, true);
    if (i > 0 && grid[i] <= grid[i - 1]) {
      throw DomainError("estimate_q_numeric: grid must be strictly increasing");
    }
  }

  AsymptoticFit fit;
  fit.r = r;
  fit.grid = grid;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    std::vector<double> params;
    fit.scaled_deficit.push_back(scaled_optimal_deficit(grid[i], r, &params));
    if (i + 1 == grid.size()) fit.limits = params;
  }

  // Ordinary least squares for R(n) = q + d pi / n. With the deficit
  // evaluated in extended precision the data noise is far below the
  // truncation error of the two-term model, so no down-weighting of large n.
  double s00 = 0.0, s01 = 0.0, s11 = 0.0, t0 = 0.0, t1 = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double xi = kPi / grid[i];
    s00 += 1.0;
    s01 += xi;
    s11 += xi * xi;
    t0 += fit.scaled_deficit[i];
    t1 += xi * fit.scaled_deficit[i];
  }
  const double det = s00 * s11 - s01 * s01;
  fit.q = (t0 * s11 - t1 * s01) / det;
  fit.d = (s00 * t1 - s01 * t0) / det;

  double rss = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double e = fit.scaled_deficit[i] - fit.q - fit.d * kPi / grid[i];
    rss += e * e;
  }
  fit.residual = std::sqrt(rss / static_cast<double>(grid.size()));
  return fit;
}

TheoremConstants theorem_constants() {
  TheoremConstants t;
  t.q1 = reference::asymptotic_row(1).q;
  t.q16 = reference::asymptotic_row(16).q;
  t.delta = t.q16 - 1.0 / 24.0;
  t.improvement = t.q1 - t.q16;
  t.delta_matches = std::abs(t.delta - t.delta_published) <= 1e-9;
  t.delta_below_bound = t.delta < t.delta_bound;
  t.improvement_above_bound = t.improvement > t.improvement_bound;
  return t;
}

}  // namespace smallpoly
