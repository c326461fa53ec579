#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "smallpoly/errors.hpp"
#include "smallpoly/geometry.hpp"

using namespace smallpoly;

namespace {

AngleVector angles(std::vector<double> t) {
  AngleVector a;
  a.n = static_cast<int>(2 * t.size());
  a.theta = std::move(t);
  return a;
}


// The published n = 6 optimal angles are printed to 6 decimals; restore the constraints
// from the first angle so the vector closes exactly.
AngleVector q61_angles() {
  std::vector<double> t(3);
  t[0] = 0.3509301888703616;
  // theta_1 + theta_2 = pi/2 - alpha; closure fixes the split.
  const double beta = (kPi / 2 - t[0]) / 2;
  double lo = -0.2, hi = 0.2;
  for (int i = 0; i < 200; ++i) {
    const double g = 0.5 * (lo + hi);
    t[1] = beta + g;
    t[2] = beta - g;
    if (oracle::closure(t) > 0) lo = g; else hi = g;
  }
  return angles(t);
}

}  // namespace

TEST_CASE("upper bound and regular area") {
  CHECK(std::abs(upper_bound(6) - 0.6877007594) <= 5e-11);
  CHECK(std::abs(upper_bound(12) - 0.7621336536) <= 5e-11);
  CHECK(std::abs(upper_bound(120) - 0.7851731162) <= 5e-11);
  CHECK(std::abs(regular_area(8) - 0.7071067812) <= 5e-11);
  CHECK(std::abs(regular_area(6) - 0.6495190528) <= 5e-11);
  CHECK(regular_area(4) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK_THROWS_AS(upper_bound(7), DomainError);
  CHECK_THROWS_AS(upper_bound(4), DomainError);
  CHECK_THROWS_AS(regular_area(5), DomainError);
}

TEST_CASE("regular polygon area against an independent shoelace") {
  for (int n : {4, 6, 8, 20, 64}) {
    // Vertices on the circumscribed circle of a unit-diameter regular n-gon
    // (n even: diameter is the long diagonal, circumradius 1/2).
    double s = 0.0;
    for (int k = 0; k < n; ++k) {
      const double a0 = 2 * kPi * k / n, a1 = 2 * kPi * (k + 1) / n;
      s += 0.25 * (std::cos(a0) * std::sin(a1) - std::sin(a0) * std::cos(a1));
    }
    CHECK(std::abs(regular_area(n) - 0.5 * s) <= 1e-14);
  }
}

TEST_CASE("bound minus regular area behaves like pi^3/(16 n^2)") {
  const double ratio =
      (upper_bound(120) - regular_area(120)) / (std::pow(kPi, 3) / (16.0 * 120 * 120));
  CHECK(std::abs(ratio - 1.0) <= 0.05);
}

TEST_CASE("vertices from angles") {
  SUBCASE("first vertex") {
    const AngleVector a = q61_angles();
    const SmallPolygon p = vertices_from_angles(a);
    CHECK(p.vertices[1].x == doctest::Approx(std::sin(a.theta[0])).epsilon(1e-15));
    CHECK(p.vertices[1].y == doctest::Approx(std::cos(a.theta[0])).epsilon(1e-15));
    CHECK(p.vertices[0] == Point{0.0, 0.0});
    CHECK(p.vertices[5] == Point{0.0, 1.0});
  }
  SUBCASE("pentagon plus a vertex closes at -1/2") {
    const AngleVector a = angles({kPi / 10, kPi / 5, kPi / 5});
    CHECK(std::abs(std::sin(kPi / 10) - std::sin(3 * kPi / 10) + 0.5) <= 1e-15);
    const SmallPolygon p = vertices_from_angles(a);
    CHECK(std::abs(p.vertices[2].x + 0.5) <= 1e-12);
    CHECK(std::abs(p.vertices[3].x - 0.5) <= 1e-12);
  }
  SUBCASE("published n = 6 optimum: unit skeleton and unit diameter") {
    const SmallPolygon p = vertices_from_angles(q61_angles());
    for (const auto& [i, j] : p.skeleton_edges) {
      const Point& a = p.vertices[static_cast<std::size_t>(i)];
      const Point& b = p.vertices[static_cast<std::size_t>(j)];
      CHECK(std::abs(std::hypot(a.x - b.x, a.y - b.y) - 1.0) <= 1e-12);
    }
    std::vector<oracle::P2> v;
    for (const Point& q : p.vertices) v.push_back({q.x, q.y});
    CHECK(std::abs(oracle::brute_diameter(v) - 1.0) <= 1e-12);
    CHECK(p.skeleton_edges.size() == 6);
  }
  SUBCASE("matches an independent walk with mirroring") {
    std::mt19937_64 rng(7);
    for (int n : {6, 8, 14, 30, 80}) {
      const auto th = oracle::random_feasible(n, rng);
      REQUIRE(!th.empty());
      const SmallPolygon p = vertices_from_angles(angles(th));
      const auto ref = oracle::full_polygon(th);
      for (std::size_t k = 0; k < ref.size(); ++k) {
        CHECK(std::abs(p.vertices[k].x - ref[k].x) <= 1e-12);
        CHECK(std::abs(p.vertices[k].y - ref[k].y) <= 1e-12);
      }
    }
  }
  SUBCASE("rejects infeasible input") {
    CHECK_THROWS_AS(vertices_from_angles(angles({0.3, 0.6, 0.6})), ConstraintViolation);
    CHECK_THROWS_AS(vertices_from_angles(angles({0.1, 0.2})), DomainError);
    CHECK_THROWS_AS(vertices_from_angles(angles({-0.1, 0.9, 0.77})), DomainError);
  }
}

TEST_CASE("dissection area") {
  CHECK(std::abs(area_dissection(q61_angles()) - 0.6749814429) <= 5e-11);
  CHECK(std::abs(area_dissection(angles({kPi / 10, kPi / 5, kPi / 5})) - 0.6722882584) <= 5e-11);
}

TEST_CASE("dissection, shoelace and sine-difference forms agree on random feasible angles") {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> half(3, 100);
  double worst_shoelace = 0.0, worst_sine = 0.0;
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 2 * half(rng);
    const auto th = oracle::random_feasible(n, rng);
    REQUIRE(!th.empty());
    const AngleVector a = angles(th);
    const double d = area_dissection(a);
    worst_shoelace = std::max(worst_shoelace, std::abs(d - area_shoelace(vertices_from_angles(a))));
    worst_sine = std::max(worst_sine, std::abs(d - oracle::area_sine_difference(th)));
  }
  CHECK(worst_shoelace <= 1e-12);
  CHECK(worst_sine <= 1e-11);
}

TEST_CASE("shoelace on simple shapes") {
  SmallPolygon square;
  square.n = 4;
  square.vertices = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  square.boundary = {0, 1, 2, 3};
  CHECK(area_shoelace(square) == doctest::Approx(1.0).epsilon(1e-15));
  SmallPolygon line;
  line.n = 3;
  line.vertices = {{0, 0}, {0.5, 0.5}, {1, 1}};
  line.boundary = {0, 1, 2};
  CHECK(area_shoelace(line) == 0.0);
}

TEST_CASE("validate") {
  SUBCASE("segment diameter") {
    const std::vector<Point> seg = {{0, 0}, {1, 0}};
    CHECK(diameter(seg) == 1.0);
  }
  SUBCASE("published optimum passes") {
    const SmallPolygon p = vertices_from_angles(q61_angles());
    const AreaReport r = validate(p);
    CHECK(r.is_small);
    CHECK(r.is_convex);
    CHECK(r.is_symmetric);
    CHECK(r.unit_skeleton);
    CHECK(std::abs(r.diameter - 1.0) <= 1e-12);
    REQUIRE(r.upper_bound.has_value());
    CHECK(*r.gap >= 0.0);
    CHECK(std::abs(r.area - 0.6749814429) <= 5e-11);
  }
  SUBCASE("outward perturbation breaks smallness") {
    SmallPolygon p = vertices_from_angles(q61_angles());
    const double len = std::hypot(p.vertices[1].x, p.vertices[1].y - 0.5);
    p.vertices[1].x += 0.1 * p.vertices[1].x / len;
    p.vertices[1].y += 0.1 * (p.vertices[1].y - 0.5) / len;
    const AreaReport r = validate(p);
    CHECK_FALSE(r.is_small);
    CHECK_FALSE(r.all_valid());
  }
  SUBCASE("asymmetric perturbation is flagged") {
    SmallPolygon p = vertices_from_angles(q61_angles());
    p.vertices[2].x += 1e-6;
    CHECK_FALSE(validate(p).is_symmetric);
  }
}

TEST_CASE("boundary order is a counter-clockwise permutation") {
  std::mt19937_64 rng(3);
  const auto th = oracle::random_feasible(20, rng);
  const SmallPolygon p = vertices_from_angles(angles(th));
  std::vector<int> seen(20, 0);
  for (int i : p.boundary) ++seen[static_cast<std::size_t>(i)];
  for (int s : seen) CHECK(s == 1);
  double signed_area = 0.0;
  for (std::size_t i = 0; i < p.boundary.size(); ++i) {
    const Point& a = p.vertices[static_cast<std::size_t>(p.boundary[i])];
    const Point& b = p.vertices[static_cast<std::size_t>(p.boundary[(i + 1) % p.boundary.size()])];
    signed_area += a.x * b.y - a.y * b.x;
  }
  CHECK(signed_area > 0.0);
}
