#include "smallpoly/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "smallpoly/errors.hpp"

namespace smallpoly {
namespace {

double cross(const Point& a, const Point& b) { return a.x * b.y - a.y * b.x; }

double distance(const Point& a, const Point& b) { return std::hypot(a.x - b.x, a.y - b.y); }

double parity_half(int half) { return (half % 2 == 0) ? 0.5 : -0.5; }

}  // namespace

double upper_bound(int n) {
  if (n < 6 || n % 2 != 0) {
    throw DomainError("upper_bound: n must be even and >= 6, got " + std::to_string(n));
  }
  const double nd = n;
  return 0.5 * nd * std::sin(kPi / nd) - 0.5 * (nd - 1.0) * std::tan(kPi / (2.0 * nd - 2.0));
}

double regular_area(int n) {
  if (n < 4 || n % 2 != 0) {
    throw DomainError("regular_area: n must be even and >= 4, got " + std::to_string(n));
  }
  const double nd = n;
  return nd / 8.0 * std::sin(2.0 * kPi / nd);
}

void check_angle_domain(const AngleVector& a) {
  if (a.n < 6 || a.n % 2 != 0) {
    throw DomainError("angle vector: n must be even and >= 6, got " + std::to_string(a.n));
  }
  if (a.theta.size() != a.half()) {
    throw DomainError("angle vector: expected " + std::to_string(a.half()) + " angles, got " +
                      std::to_string(a.theta.size()));
  }
  for (std::size_t k = 0; k < a.theta.size(); ++k) {
    const double hi = (k == 0) ? kPi / 6.0 : kPi / 3.0;
    const double t = a.theta[k];
    if (!(t >= 0.0 && t <= hi)) {
      throw DomainError("angle vector: theta_" + std::to_string(k) + " = " + std::to_string(t) +
                        " outside [0, " + std::to_string(hi) + "]");
    }
  }
}

double angle_sum_residual(const AngleVector& a) {
  double s = 0.0;
  for (double t : a.theta) s += t;
  return s - kPi / 2.0;
}

double closure_residual(const AngleVector& a) {
  const std::size_t m = a.half();
  double phi = 0.0;
  double x = 0.0;
  for (std::size_t j = 0; j + 1 < m; ++j) {
    phi += a.theta[j];
    x += (j % 2 == 0) ? std::sin(phi) : -std::sin(phi);
  }
  return x - parity_half(static_cast<int>(m));
}

std::vector<Point> half_chain(const AngleVector& a) {
  const std::size_t m = a.half();
  std::vector<Point> v(m + 1);
  double phi = 0.0;
  for (std::size_t j = 0; j < m; ++j) {
    phi += a.theta[j];
    const double sign = (j % 2 == 0) ? 1.0 : -1.0;
    v[j + 1] = {v[j].x + sign * std::sin(phi), v[j].y + sign * std::cos(phi)};
  }
  return v;
}

std::vector<std::pair<int, int>> skeleton_edges(int n) {
  std::vector<std::pair<int, int>> edges;
  edges.reserve(static_cast<std::size_t>(n));
  for (int k = 0; k + 1 <= n - 2; ++k) edges.emplace_back(k, k + 1);
  edges.emplace_back(n - 2, 0);
  edges.emplace_back(0, n - 1);
  return edges;
}

std::vector<int> boundary_order(std::span<const Point> vertices) {
  std::vector<int> order(vertices.size());
  std::iota(order.begin(), order.end(), 0);
  if (vertices.empty()) return order;

  Point c;
  for (const Point& p : vertices) {
    c.x += p.x;
    c.y += p.y;
  }
  c.x /= static_cast<double>(vertices.size());
  c.y /= static_cast<double>(vertices.size());

  std::vector<double> key(vertices.size());
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    key[i] = std::atan2(vertices[i].y - c.y, vertices[i].x - c.x);
  }
  std::stable_sort(order.begin(), order.end(), [&](int i, int j) { return key[i] < key[j]; });
  return order;
}

SmallPolygon vertices_from_angles(const AngleVector& a) {
  check_angle_domain(a);
  const double sum_res = angle_sum_residual(a);
  if (std::abs(sum_res) > kFeasibilityTol) {
    throw ConstraintViolation("angle sum differs from pi/2 by " + std::to_string(sum_res), sum_res);
  }
  const std::vector<Point> chain = half_chain(a);
  const std::size_t m = a.half();
  const double close_res = chain[m - 1].x - parity_half(static_cast<int>(m));
  if (std::abs(close_res) > kFeasibilityTol) {
    throw ConstraintViolation("middle skeleton edge is not horizontal; closure residual " +
                                  std::to_string(close_res),
                              close_res);
  }

  const int n = a.n;
  SmallPolygon p;
  p.n = n;
  p.vertices.resize(static_cast<std::size_t>(n));
  for (std::size_t k = 0; k < m; ++k) p.vertices[k] = chain[k];
  // v_{n/2} .. v_{n-2} are mirror images; v_{n/2} agrees with chain[m] up to
  // the closure residual.
  for (int k = static_cast<int>(m); k <= n - 2; ++k) {
    const Point& src = p.vertices[static_cast<std::size_t>(n - 1 - k)];
    p.vertices[static_cast<std::size_t>(k)] = {-src.x, src.y};
  }
  p.vertices[static_cast<std::size_t>(n - 1)] = {0.0, 1.0};
  p.skeleton_edges = skeleton_edges(n);
  p.boundary = boundary_order(p.vertices);
  return p;
}

double area_dissection(const AngleVector& a) {
  check_angle_domain(a);
  const std::vector<Point> v = half_chain(a);
  const std::size_t m = a.half();
  double area = std::sin(a.theta[0]);
  for (std::size_t k = 2; k < m; ++k) area += cross(v[k + 1], v[k - 1]);
  return area;
}

double area_shoelace(const SmallPolygon& p) {
  const std::size_t count = p.vertices.size();
  if (count < 3) return 0.0;
  std::vector<int> order = p.boundary;
  if (order.empty()) {
    order.resize(count);
    std::iota(order.begin(), order.end(), 0);
  }
  double twice = 0.0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    const Point& a = p.vertices[static_cast<std::size_t>(order[i])];
    const Point& b = p.vertices[static_cast<std::size_t>(order[(i + 1) % order.size()])];
    twice += cross(a, b);
  }
  return std::abs(0.5 * twice);
}

double diameter(std::span<const Point> vertices) {
  double best = 0.0;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    for (std::size_t j = i + 1; j < vertices.size(); ++j) {
      best = std::max(best, distance(vertices[i], vertices[j]));
    }
  }
  return best;
}

AreaReport validate(const SmallPolygon& p) {
  AreaReport r;
  const std::size_t count = p.vertices.size();
  std::vector<int> order = p.boundary.empty() ? boundary_order(p.vertices) : p.boundary;

  SmallPolygon ordered = p;
  ordered.boundary = order;
  r.area = area_shoelace(ordered);
  r.diameter = diameter(p.vertices);
  r.is_small = r.diameter > 0.0 && r.diameter <= 1.0 + kFeasibilityTol;

  if (p.n >= 6 && p.n % 2 == 0) {
    r.upper_bound = upper_bound(p.n);
    r.gap = *r.upper_bound - r.area;
  }

  // Convexity: every consecutive turn along the boundary has the same sign.
  // Collinear triples (|turn| tiny) are tolerated.
  if (count >= 3) {
    int positive = 0;
    int negative = 0;
    for (std::size_t i = 0; i < order.size(); ++i) {
      const Point& a = p.vertices[static_cast<std::size_t>(order[i])];
      const Point& b = p.vertices[static_cast<std::size_t>(order[(i + 1) % order.size()])];
      const Point& c = p.vertices[static_cast<std::size_t>(order[(i + 2) % order.size()])];
      const double turn = cross({b.x - a.x, b.y - a.y}, {c.x - b.x, c.y - b.y});
      if (turn > kIdentityTol) ++positive;
      if (turn < -kIdentityTol) ++negative;
    }
    r.is_convex = (positive == 0) != (negative == 0);
  }

  // Mirror symmetry about the y-axis in the skeleton indexing.
  if (count >= 2) {
    const int n = static_cast<int>(count);
    double res = std::max(std::hypot(p.vertices[0].x, p.vertices[0].y),
                          std::hypot(p.vertices[count - 1].x, p.vertices[count - 1].y - 1.0));
    for (int k = 1; k <= n - 2; ++k) {
      const Point& a = p.vertices[static_cast<std::size_t>(k)];
      const Point& b = p.vertices[static_cast<std::size_t>(n - 1 - k)];
      res = std::max({res, std::abs(a.x + b.x), std::abs(a.y - b.y)});
    }
    r.symmetry_residual = res;
    r.is_symmetric = res <= kIdentityTol;
  }

  double skel = 0.0;
  for (const auto& [i, j] : p.skeleton_edges) {
    if (i < 0 || j < 0 || static_cast<std::size_t>(i) >= count ||
        static_cast<std::size_t>(j) >= count) {
      skel = 1.0;
      continue;
    }
    const double d = distance(p.vertices[static_cast<std::size_t>(i)],
                              p.vertices[static_cast<std::size_t>(j)]);
    skel = std::max(skel, std::abs(d - 1.0));
  }
  r.skeleton_residual = skel;
  r.unit_skeleton = !p.skeleton_edges.empty() && skel <= kIdentityTol;
  return r;
}

}  // namespace smallpoly
