#include "smallpoly/cli/record.hpp"

#include <cstdio>
#include <istream>
#include <sstream>
#include <stdexcept>

#include "smallpoly/errors.hpp"

namespace smallpoly::cli {
namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

PolygonRecord base_record(int n, const AngleVector& angles, const SmallPolygon& poly,
                          const AreaReport& rep, double area) {
  PolygonRecord rec;
  rec.n = n;
  rec.area = area;
  rec.upper_bound = smallpoly::upper_bound(n);
  rec.gap = rec.upper_bound - area;
  rec.diameter = rep.diameter;
  rec.angles = angles.theta;
  rec.vertices = poly.vertices;
  rec.valid = {rep.is_convex, rep.is_symmetric, rep.is_small, rep.unit_skeleton};
  return rec;
}

}  // namespace

PolygonRecord make_record(const ConstructResult& c, const std::string& method) {
  PolygonRecord rec = base_record(c.polygon.n, c.angles, c.polygon, c.report, c.area);
  rec.r = c.params.r;
  rec.method = method;
  const ConstructDiagnostics& d = c.diagnostics;
  rec.diagnostics = {
      {"converged", d.converged},
      {"pg_norm", d.pg_norm},
      {"iterations", d.iterations},
      {"evaluations", d.evaluations},
      {"start_spread", d.start_spread},
      {"closure_residual", d.closure_residual},
      {"angle_sum_residual", d.angle_sum_residual},
  };
  return rec;
}

PolygonRecord make_record(const NlpResult& s) {
  const SmallPolygon poly = vertices_from_angles(s.angles);
  const AreaReport rep = validate(poly);
  PolygonRecord rec = base_record(s.angles.n, s.angles, poly, rep, s.area);
  rec.method = "full-nlp";
  const NlpDiagnostics& d = s.diagnostics;
  rec.diagnostics = {
      {"c1", d.c1},
      {"c2", d.c2},
      {"kkt_norm", d.kkt_norm},
      {"multipliers", {d.multipliers[0], d.multipliers[1]}},
      {"penalty", d.penalty},
      {"outer_iterations", d.outer_iterations},
      {"inner_iterations", d.inner_iterations},
      {"polish_steps", d.polish_steps},
      {"starts", d.starts},
      {"best_start", d.best_start},
      {"start_spread", d.start_spread},
      {"message", d.message},
  };
  return rec;
}

nlohmann::json to_json(const PolygonRecord& rec) {
  nlohmann::json verts = nlohmann::json::array();
  for (const Point& p : rec.vertices) verts.push_back({p.x, p.y});
  nlohmann::json j;
  j["n"] = rec.n;
  j["r"] = rec.r ? nlohmann::json(*rec.r) : nlohmann::json(nullptr);
  j["method"] = rec.method;
  j["area"] = rec.area;
  j["upper_bound"] = rec.upper_bound;
  j["gap"] = rec.gap;
  j["diameter"] = rec.diameter;
  j["angles"] = rec.angles;
  j["vertices"] = std::move(verts);
  j["valid"] = {{"convex", rec.valid.convex},
                {"symmetric", rec.valid.symmetric},
                {"small", rec.valid.small},
                {"unit_skeleton", rec.valid.unit_skeleton}};
  j["diagnostics"] = rec.diagnostics;
  return j;
}

PolygonRecord record_from_json(const nlohmann::json& j) {
  try {
    PolygonRecord rec;
    rec.n = j.at("n").get<int>();
    if (j.contains("r") && !j.at("r").is_null()) rec.r = j.at("r").get<int>();
    rec.method = j.at("method").get<std::string>();
    rec.area = j.at("area").get<double>();
    rec.upper_bound = j.at("upper_bound").get<double>();
    rec.gap = j.at("gap").get<double>();
    rec.diameter = j.at("diameter").get<double>();
    rec.angles = j.at("angles").get<std::vector<double>>();
    for (const auto& v : j.at("vertices")) {
      if (!v.is_array() || v.size() != 2) throw std::invalid_argument("vertex is not an [x, y] pair");
      rec.vertices.push_back({v[0].get<double>(), v[1].get<double>()});
    }
    const auto& f = j.at("valid");
    rec.valid = {f.at("convex").get<bool>(), f.at("symmetric").get<bool>(),
                 f.at("small").get<bool>(), f.at("unit_skeleton").get<bool>()};
    if (j.contains("diagnostics")) rec.diagnostics = j.at("diagnostics");
    if (static_cast<int>(rec.vertices.size()) != rec.n) {
      throw std::invalid_argument("vertex count does not match n");
    }
    return rec;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed polygon record: ") + e.what());
  }
}

std::string vertices_to_csv(const std::vector<Point>& vertices) {
  std::string out = "index,x,y\n";
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    out += std::to_string(i) + "," + fmt17(vertices[i].x) + "," + fmt17(vertices[i].y) + "\n";
  }
  return out;
}

std::vector<Point> vertices_from_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line.rfind("index,x,y", 0) != 0) {
    throw std::invalid_argument("CSV must start with the header index,x,y");
  }
  std::vector<Point> pts;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string idx, x, y;
    if (!std::getline(row, idx, ',') || !std::getline(row, x, ',') || !std::getline(row, y)) {
      throw std::invalid_argument("bad CSV row: " + line);
    }
    if (std::stoul(idx) != pts.size()) throw std::invalid_argument("CSV rows out of order");
    pts.push_back({std::stod(x), std::stod(y)});
  }
  return pts;
}

std::string render_svg(const std::vector<Point>& vertices) {
  const int n = static_cast<int>(vertices.size());
  std::ostringstream s;
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"-0.6 -0.05 1.2 1.15\" "
       "width=\"600\" height=\"575\">\n";
  s << "<g transform=\"matrix(1 0 0 -1 0 1.05)\" fill=\"none\" stroke-width=\"0.004\">\n";
  s << "<circle cx=\"0\" cy=\"0.5\" r=\"0.5\" stroke=\"#888888\" stroke-dasharray=\"0.02 0.015\"/>\n";

  const std::vector<int> order = boundary_order(vertices);
  s << "<path class=\"polygon\" stroke=\"#000000\" d=\"";
  for (std::size_t i = 0; i < order.size(); ++i) {
    const Point& p = vertices[static_cast<std::size_t>(order[i])];
    s << (i == 0 ? "M" : " L") << fmt("%.9f", p.x) << " " << fmt("%.9f", p.y);
  }
  s << " Z\"/>\n";

  for (const auto& [a, b] : skeleton_edges(n)) {
    const Point& p = vertices[static_cast<std::size_t>(a)];
    const Point& q = vertices[static_cast<std::size_t>(b)];
    s << "<line class=\"skeleton\" stroke=\"#c03020\" x1=\"" << fmt("%.9f", p.x) << "\" y1=\""
      << fmt("%.9f", p.y) << "\" x2=\"" << fmt("%.9f", q.x) << "\" y2=\"" << fmt("%.9f", q.y)
      << "\"/>\n";
  }
  s << "</g>\n</svg>\n";
  return s.str();
}

std::string record_to_text(const PolygonRecord& rec) {
  std::ostringstream s;
  s << "n            " << rec.n << "\n";
  s << "r            " << (rec.r ? std::to_string(*rec.r) : std::string("-")) << "\n";
  s << "method       " << rec.method << "\n";
  s << "area         " << fmt17(rec.area) << "\n";
  s << "upper_bound  " << fmt17(rec.upper_bound) << "\n";
  s << "gap          " << fmt17(rec.gap) << "\n";
  s << "diameter     " << fmt17(rec.diameter) << "\n";
  s << "valid        convex=" << rec.valid.convex << " symmetric=" << rec.valid.symmetric
    << " small=" << rec.valid.small << " unit_skeleton=" << rec.valid.unit_skeleton << "\n";
  s << "angles\n";
  for (std::size_t i = 0; i < rec.angles.size(); ++i) {
    s << "  theta_" << i << "  " << fmt("%.10f", rec.angles[i]) << "\n";
  }
  return s.str();
}

AreaReport validate_vertices(const std::vector<Point>& vertices) {
  const int n = static_cast<int>(vertices.size());
  if (n < 6 || n % 2 != 0) {
    throw DomainError("expected an even number of vertices >= 6, got " + std::to_string(n));
  }
  SmallPolygon poly;
  poly.n = n;
  poly.vertices = vertices;
  poly.skeleton_edges = skeleton_edges(n);
  poly.boundary = boundary_order(vertices);
  return validate(poly);
}

}  // namespace smallpoly::cli
