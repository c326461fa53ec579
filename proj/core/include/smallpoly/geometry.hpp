#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace smallpoly {

inline constexpr double kPi = 3.14159265358979323846;

// Tolerances shared by the geometric checks.
inline constexpr double kIdentityTol = 1e-12;
inline constexpr double kFeasibilityTol = 1e-9;

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

// Turning angles theta_0 .. theta_{n/2-1} of a polygon whose skeleton is an
// (n-1)-star through v_0..v_{n-2} plus the pendant edge v_0 v_{n-1}, mirror
// symmetric about that pendant edge.
struct AngleVector {
  int n = 0;
  std::vector<double> theta;

  std::size_t half() const { return static_cast<std::size_t>(n / 2); }
};

// Vertices are indexed as in the skeleton: v_0 = (0,0), v_{n-1} = (0,1), the
// star path v_0 v_1 ... v_{n-2} v_0. `boundary` lists vertex indices in
// counter-clockwise order around the hull.
struct SmallPolygon {
  int n = 0;
  std::vector<Point> vertices;
  std::vector<std::pair<int, int>> skeleton_edges;
  std::vector<int> boundary;
};

struct AreaReport {
  double area = 0.0;
  std::optional<double> upper_bound;  // only defined for even n >= 6
  std::optional<double> gap;
  double diameter = 0.0;
  double symmetry_residual = 0.0;
  double skeleton_residual = 0.0;  // max | |edge| - 1 | over skeleton edges
  bool is_convex = false;
  bool is_symmetric = false;
  bool is_small = false;
  bool unit_skeleton = false;

  bool all_valid() const { return is_convex && is_symmetric && is_small && unit_skeleton; }
};

// Upper bound on the area of any small n-gon, n even:
//   (n/2) sin(pi/n) - ((n-1)/2) tan(pi/(2n-2)).
double upper_bound(int n);

// Area of the regular n-gon of unit diameter, (n/8) sin(2 pi/n). n even, n >= 4.
double regular_area(int n);

// Throws DomainError unless n is even, n >= 6, theta has n/2 entries and every
// angle lies in its box (theta_0 in [0, pi/6], the rest in [0, pi/3]).
void check_angle_domain(const AngleVector& a);

// Residuals of the two equality constraints: angle sum minus pi/2, and
// x_{n/2-1} - (-1)^{n/2}/2 (horizontal closure of the middle edge).
double angle_sum_residual(const AngleVector& a);
double closure_residual(const AngleVector& a);

// Coordinates v_0 .. v_{n/2} from the cumulative-angle sums, without any
// mirroring or feasibility checks.
std::vector<Point> half_chain(const AngleVector& a);

// Builds the full symmetric polygon. Throws DomainError on a bad angle vector
// and ConstraintViolation when the angle sum or closure is off by more than
// kFeasibilityTol.
SmallPolygon vertices_from_angles(const AngleVector& a);

// Fan-of-triangles area about v_0 (2A_1 = sin theta_0, 2A_k a cross product of
// v_{k+1} and v_{k-1}).
double area_dissection(const AngleVector& a);

// Shoelace area over the boundary order, returned as an absolute value. An
// empty boundary falls back to the vertex order.
double area_shoelace(const SmallPolygon& p);

// Counter-clockwise order by polar angle about the vertex centroid.
std::vector<int> boundary_order(std::span<const Point> vertices);

// Skeleton edges of the star-plus-pendant for n vertices.
std::vector<std::pair<int, int>> skeleton_edges(int n);

// Largest pairwise vertex distance (brute force).
double diameter(std::span<const Point> vertices);

// Smallness, convexity, mirror symmetry and unit-skeleton checks. Never throws
// on geometric failure; everything is reported through the flags.
AreaReport validate(const SmallPolygon& p);

}  // namespace smallpoly
