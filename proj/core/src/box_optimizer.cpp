#include "smallpoly/box_optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <random>
#include <string>

#include "smallpoly/errors.hpp"

namespace smallpoly {
namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double inf_norm(std::span<const double> a) {
  double m = 0.0;
  for (double v : a) m = std::max(m, std::abs(v));
  return m;
}

struct CorrectionPair {
  std::vector<double> s;
  std::vector<double> y;
  double rho;
};

// Two-loop recursion restricted to the free coordinates.
std::vector<double> lbfgs_direction(std::span<const double> grad, const std::vector<bool>& frozen,
                                    const std::deque<CorrectionPair>& pairs) {
  const std::size_t n = grad.size();
  std::vector<double> q(grad.begin(), grad.end());
  for (std::size_t i = 0; i < n; ++i) {
    if (frozen[i]) q[i] = 0.0;
  }
  std::vector<double> alpha(pairs.size());
  for (std::size_t k = pairs.size(); k-- > 0;) {
    alpha[k] = pairs[k].rho * dot(pairs[k].s, q);
    for (std::size_t i = 0; i < n; ++i) q[i] -= alpha[k] * pairs[k].y[i];
  }
  if (!pairs.empty()) {
    const auto& last = pairs.back();
    const double gamma = dot(last.s, last.y) / dot(last.y, last.y);
    for (double& v : q) v *= gamma;
  }
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const double beta = pairs[k].rho * dot(pairs[k].y, q);
    for (std::size_t i = 0; i < n; ++i) q[i] += pairs[k].s[i] * (alpha[k] - beta);
  }
  for (std::size_t i = 0; i < n; ++i) {
    q[i] = frozen[i] ? 0.0 : -q[i];
  }
  return q;
}

void check_box(std::span<const double> lower, std::span<const double> upper, std::size_t dim) {
  if (lower.size() != dim || upper.size() != dim) {
    throw DomainError("box: bound vectors do not match the dimension");
  }
  for (std::size_t i = 0; i < dim; ++i) {
    if (!(lower[i] <= upper[i])) throw DomainError("box: lower bound exceeds upper bound");
  }
}

}  // namespace

double projected_gradient_norm(std::span<const double> x, std::span<const double> grad,
                               std::span<const double> lower, std::span<const double> upper) {
  double m = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double moved = std::clamp(x[i] - grad[i], lower[i], upper[i]);
    m = std::max(m, std::abs(x[i] - moved));
  }
  return m;
}

BoundedResult minimize_bounded(const ValueAndGradient& fg, std::vector<double> x0,
                               std::span<const double> lower, std::span<const double> upper,
                               const BoundedOptions& options) {
  const std::size_t n = x0.size();
  check_box(lower, upper, n);

  BoundedResult res;
  std::vector<double> x = std::move(x0);
  for (std::size_t i = 0; i < n; ++i) x[i] = std::clamp(x[i], lower[i], upper[i]);

  std::vector<double> g(n);
  double f = fg(x, g);
  res.evaluations = 1;

  std::deque<CorrectionPair> pairs;
  std::vector<double> x_new(n);
  std::vector<double> g_new(n);
  std::vector<bool> frozen(n);
  int stall = 0;

  for (int iter = 0; iter < options.max_iter; ++iter) {
    res.iterations = iter;
    const double pg = projected_gradient_norm(x, g, lower, upper);
    if (pg <= options.pg_tol) {
      res.converged = true;
      res.message = "projected gradient below tolerance";
      break;
    }

    for (std::size_t i = 0; i < n; ++i) {
      const bool at_lo = x[i] <= lower[i] && g[i] > 0.0;
      const bool at_hi = x[i] >= upper[i] && g[i] < 0.0;
      frozen[i] = at_lo || at_hi;
    }

    bool accepted = false;
    double f_new = f;
    for (int attempt = 0; attempt < 2 && !accepted; ++attempt) {
      std::vector<double> d = lbfgs_direction(g, frozen, pairs);
      double slope = dot(g, d);
      if (!(slope < 0.0)) {
        pairs.clear();
        d = lbfgs_direction(g, frozen, pairs);
        slope = dot(g, d);
        if (!(slope < 0.0)) break;
      }
      double t = pairs.empty() ? std::min(1.0, 1.0 / std::max(inf_norm(d), 1e-300)) : 1.0;
      for (int bt = 0; bt < options.max_backtracks; ++bt) {
        for (std::size_t i = 0; i < n; ++i) {
          x_new[i] = std::clamp(x[i] + t * d[i], lower[i], upper[i]);
        }
        double decrease = 0.0;
        for (std::size_t i = 0; i < n; ++i) decrease += g[i] * (x_new[i] - x[i]);
        f_new = fg(x_new, g_new);
        ++res.evaluations;
        if (std::isfinite(f_new) && f_new <= f + options.armijo * decrease && decrease < 0.0) {
          accepted = true;
          break;
        }
        t *= 0.5;
      }
      if (!accepted) pairs.clear();
    }

    if (!accepted) {
      res.message = "line search could not decrease the objective";
      break;
    }

    CorrectionPair pair{std::vector<double>(n), std::vector<double>(n), 0.0};
    for (std::size_t i = 0; i < n; ++i) {
      pair.s[i] = x_new[i] - x[i];
      pair.y[i] = g_new[i] - g[i];
    }
    const double sy = dot(pair.s, pair.y);
    if (sy > std::numeric_limits<double>::epsilon() * dot(pair.y, pair.y)) {
      pair.rho = 1.0 / sy;
      pairs.push_back(std::move(pair));
      if (static_cast<int>(pairs.size()) > options.memory) pairs.pop_front();
    }

    const double rel = (f - f_new) / std::max(1.0, std::abs(f));
    stall = (rel <= options.rel_decrease_tol) ? stall + 1 : 0;
    x.swap(x_new);
    g.swap(g_new);
    f = f_new;
    res.iterations = iter + 1;
    if (stall >= options.stall_iterations) {
      res.message = "objective stalled";
      break;
    }
  }

  res.pg_norm = projected_gradient_norm(x, g, lower, upper);
  if (!res.converged && res.pg_norm <= options.pg_tol) {
    res.converged = true;
  }
  if (res.message.empty()) res.message = "iteration limit reached";
  res.x = std::move(x);
  res.value = f;
  return res;
}

void finite_difference_gradient(const std::function<double(std::span<const double>)>& f,
                                std::span<const double> x, std::span<const double> lower,
                                std::span<const double> upper, double step, bool absolute_step,
                                std::span<double> grad) {
  std::vector<double> probe(x.begin(), x.end());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double h = absolute_step ? step : step * (1.0 + std::abs(x[i]));
    const double xi = x[i];
    const bool can_up = xi + h <= upper[i];
    const bool can_down = xi - h >= lower[i];
    if (can_up && can_down) {
      probe[i] = xi + h;
      const double fp = f(probe);
      probe[i] = xi - h;
      const double fm = f(probe);
      grad[i] = (fp - fm) / (2.0 * h);
    } else if (can_up) {
      probe[i] = xi + h;
      const double fp = f(probe);
      probe[i] = xi;
      grad[i] = (fp - f(probe)) / h;
    } else if (can_down) {
      probe[i] = xi - h;
      const double fm = f(probe);
      probe[i] = xi;
      grad[i] = (f(probe) - fm) / h;
    } else {
      grad[i] = 0.0;
    }
    probe[i] = xi;
  }
}

BoxResult maximize_box(const BoxProblem& p, std::span<const double> start) {
  const auto dim = static_cast<std::size_t>(p.dim);
  check_box(p.lower, p.upper, dim);
  if (start.size() != dim) throw DomainError("maximize_box: start has the wrong dimension");
  if (!(p.tol > 0.0)) throw DomainError("maximize_box: tolerance must be positive");
  if (!p.objective) throw DomainError("maximize_box: missing objective");

  const auto negated = [&](std::span<const double> x, std::span<double> grad) {
    const double v = p.objective(x);
    if (p.gradient) {
      p.gradient(x, grad);
    } else {
      finite_difference_gradient(p.objective, x, p.lower, p.upper, p.fd_step, p.fd_absolute,
                                 grad);
    }
    for (double& gi : grad) gi = -gi;
    return -v;
  };

  BoundedOptions opts;
  opts.pg_tol = p.tol;
  opts.max_iter = p.max_iter;

  std::vector<std::vector<double>> starts;
  starts.emplace_back(start.begin(), start.end());
  for (std::uint64_t seed : p.multistart_seeds) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::vector<double> s(start.begin(), start.end());
    for (std::size_t i = 0; i < dim; ++i) {
      const double width = p.upper[i] - p.lower[i];
      s[i] = std::clamp(s[i] + p.jitter_fraction * width * unit(rng), p.lower[i], p.upper[i]);
    }
    starts.push_back(std::move(s));
  }

  BoxResult best;
  best.value = -std::numeric_limits<double>::infinity();
  BoxDiagnostics diag;
  diag.starts = static_cast<int>(starts.size());
  std::vector<bool> converged(starts.size(), false);

  for (std::size_t k = 0; k < starts.size(); ++k) {
    BoundedResult r = minimize_bounded(negated, starts[k], p.lower, p.upper, opts);
    const double value = -r.value;
    diag.start_values.push_back(value);
    diag.iterations += r.iterations;
    diag.evaluations += r.evaluations;
    converged[k] = r.converged;
    if (value > best.value) {
      best.value = value;
      best.x = r.x;
      diag.best_start = static_cast<int>(k);
      diag.converged = r.converged;
      diag.pg_norm = r.pg_norm;
      diag.message = r.message;
    }
  }
  for (std::size_t k = 0; k < starts.size(); ++k) {
    if (converged[k]) {
      diag.start_spread = std::max(diag.start_spread, std::abs(diag.start_values[k] - best.value));
    }
  }
  best.diagnostics = std::move(diag);
  return best;
}

}  // namespace smallpoly
