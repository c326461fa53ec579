#include "smallpoly/roots.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "smallpoly/errors.hpp"

namespace smallpoly {

RootResult find_root(const std::function<double(double)>& f, double lo, double hi,
                     const RootOptions& options) {
  double a = lo;
  double b = hi;
  double fa = f(a);
  double fb = f(b);
  if (fa == 0.0) return {a, 0.0, 0};
  if (fb == 0.0) return {b, 0.0, 0};
  if ((fa > 0.0) == (fb > 0.0)) {
    throw DomainError("find_root: no sign change on [" + std::to_string(lo) + ", " +
                      std::to_string(hi) + "]");
  }

  constexpr double eps = std::numeric_limits<double>::epsilon();
  double c = a;
  double fc = fa;
  double d = b - a;
  double e = d;

  for (int iter = 1; iter <= options.max_iter; ++iter) {
    if ((fb > 0.0) == (fc > 0.0)) {
      c = a;
      fc = fa;
      d = b - a;
      e = d;
    }
    if (std::abs(fc) < std::abs(fb)) {
      a = b;
      b = c;
      c = a;
      fa = fb;
      fb = fc;
      fc = fa;
    }
    const double tol = 2.0 * eps * std::abs(b);
    const double half = 0.5 * (c - b);
    if (std::abs(fb) <= options.residual_tol || fb == 0.0 || std::abs(half) <= tol) {
      return {b, fb, iter};
    }

    if (std::abs(e) >= tol && std::abs(fa) > std::abs(fb)) {
      double p;
      double q;
      const double s = fb / fa;
      if (a == c) {
        p = 2.0 * half * s;
        q = 1.0 - s;
      } else {
        const double qa = fa / fc;
        const double r = fb / fc;
        p = s * (2.0 * half * qa * (qa - r) - (b - a) * (r - 1.0));
        q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0.0) {
        q = -q;
      } else {
        p = -p;
      }
      if (2.0 * p < std::min(3.0 * half * q - std::abs(tol * q), std::abs(e * q))) {
        e = d;
        d = p / q;
      } else {
        d = half;
        e = d;
      }
    } else {
      d = half;
      e = d;
    }
    a = b;
    fa = fb;
    b += (std::abs(d) > tol) ? d : (half > 0.0 ? tol : -tol);
    fb = f(b);
  }
  throw OptimizationFailure("find_root: no convergence after " + std::to_string(options.max_iter) +
                                " iterations",
                            {b}, fb, {fb});
}

}  // namespace smallpoly
