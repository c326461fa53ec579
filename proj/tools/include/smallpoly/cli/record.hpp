#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "smallpoly/geometry.hpp"
#include "smallpoly/nlp.hpp"
#include "smallpoly/reduced.hpp"

namespace smallpoly::cli {

struct ValidFlags {
  bool convex = false;
  bool symmetric = false;
  bool small = false;
  bool unit_skeleton = false;

  bool all() const { return convex && symmetric && small && unit_skeleton; }
  friend bool operator==(const ValidFlags&, const ValidFlags&) = default;
};

// One polygon with everything needed to re-check it. method is one of
// "reduced", "full-nlp", "regular", "theorem".
struct PolygonRecord {
  int n = 0;
  std::optional<int> r;
  std::string method;
  double area = 0.0;
  double upper_bound = 0.0;
  double gap = 0.0;
  double diameter = 0.0;
  std::vector<double> angles;
  std::vector<Point> vertices;
  ValidFlags valid;
  nlohmann::json diagnostics = nlohmann::json::object();

  friend bool operator==(const PolygonRecord&, const PolygonRecord&) = default;
};

PolygonRecord make_record(const ConstructResult& c, const std::string& method);
PolygonRecord make_record(const NlpResult& s);

nlohmann::json to_json(const PolygonRecord& rec);
// Throws std::invalid_argument on a malformed document.
PolygonRecord record_from_json(const nlohmann::json& j);

// Header `index,x,y`, coordinates with 17 significant digits.
std::string vertices_to_csv(const std::vector<Point>& vertices);
std::vector<Point> vertices_from_csv(std::istream& in);

// Polygon path, skeleton segments and the unit-diameter circle through the
// pendant edge, in a fixed viewBox.
std::string render_svg(const std::vector<Point>& vertices);

std::string record_to_text(const PolygonRecord& rec);

// Rebuilds skeleton and boundary from bare vertices and validates them.
AreaReport validate_vertices(const std::vector<Point>& vertices);

}  // namespace smallpoly::cli
