#include "smallpoly/cli/app.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "smallpoly/asymptotics.hpp"
#include "smallpoly/cli/record.hpp"
#include "smallpoly/errors.hpp"
#include "smallpoly/geometry.hpp"
#include "smallpoly/nlp.hpp"
#include "smallpoly/reduced.hpp"
#include "smallpoly/reference_data.hpp"

namespace smallpoly::cli {
namespace {

const std::vector<int> kExtrapolationGrid = {1000, 2000, 5000, 10000, 20000, 50000};

// Construct tolerances below this are not reachable with central-difference
// gradients of the reduced area.
constexpr double kConstructTolFloor = 1e-8;

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

template <typename F>
std::vector<TableRow> parallel_rows(std::size_t count, int workers, F make_row) {
  std::vector<TableRow> rows(count);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        rows[i] = make_row(i);
      } catch (const std::exception& e) {
        rows[i].error = e.what();
      }
    }
  };
  const auto threads = static_cast<std::size_t>(std::max(1, workers));
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < std::min(threads, count); ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  return rows;
}

struct Common {
  int n = 0;
  std::optional<int> r;
  std::string format = "text";
  double tol = 1e-10;
  int max_iter = 2000;
  int multistart = 4;
  std::uint64_t seed = 0;
  std::string out_path;
};

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::invalid_argument("cannot open " + path + " for writing");
  f << text;
}

std::string format_record(const PolygonRecord& rec, const std::string& format) {
  if (format == "json") return to_json(rec).dump(2) + "\n";
  if (format == "csv") return vertices_to_csv(rec.vertices);
  if (format == "svg") return render_svg(rec.vertices);
  return record_to_text(rec);
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::invalid_argument("cannot open " + path);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

// JSON record or CSV vertex list, told apart by the first character.
std::vector<Point> load_vertices(const std::string& path) {
  const std::string text = read_file(path);
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
      throw std::invalid_argument(std::string("bad JSON: ") + e.what());
    }
    return record_from_json(j).vertices;
  }
  std::istringstream in(text);
  return vertices_from_csv(in);
}

int cmd_bound(const Common& c, std::ostream& out) {
  if (c.n < 6 || c.n % 2 != 0) {
    throw DomainError("n must be even and >= 6, got " + std::to_string(c.n));
  }
  const double ub = upper_bound(c.n);
  const double reg = regular_area(c.n);
  std::string text;
  if (c.format == "json") {
    nlohmann::json j = {{"n", c.n}, {"upper_bound", ub}, {"regular", reg}, {"gap", ub - reg}};
    text = j.dump(2) + "\n";
  } else {
    text = "upper_bound " + fmt("%.10f", ub) + "\nregular     " + fmt("%.10f", reg) +
           "\ngap         " + fmt("%.10f", ub - reg) + "\n";
  }
  emit(text, c.out_path, out);
  return kOk;
}

int cmd_construct(const Common& c, std::ostream& out) {
  ConstructOptions opts;
  opts.tol = std::max(c.tol, kConstructTolFloor);
  opts.max_iter = c.max_iter;
  opts.multistart = c.multistart;
  opts.seed = c.seed;
  const ConstructResult res = c.r ? construct_q(c.n, *c.r, opts) : construct_q_theorem(c.n, opts);
  const PolygonRecord rec = make_record(res, c.r ? "reduced" : "theorem");
  emit(format_record(rec, c.format), c.out_path, out);
  return rec.valid.all() ? kOk : kValidation;
}

int cmd_optimize(const Common& c, std::ostream& out) {
  NlpOptions opts;
  opts.constraint_tol = c.tol;
  opts.max_inner = c.max_iter;
  opts.multistart = c.multistart;
  opts.seed = c.seed;
  const NlpResult res = solve_full_nlp(c.n, std::nullopt, opts);
  const PolygonRecord rec = make_record(res);
  emit(format_record(rec, c.format), c.out_path, out);
  return rec.valid.all() ? kOk : kValidation;
}

int cmd_verify(const std::string& path, const std::string& format, std::ostream& out) {
  const std::vector<Point> v = load_vertices(path);
  const AreaReport rep = validate_vertices(v);
  std::string text;
  if (format == "json") {
    nlohmann::json j = {{"n", v.size()},
                        {"area", rep.area},
                        {"diameter", rep.diameter},
                        {"symmetry_residual", rep.symmetry_residual},
                        {"skeleton_residual", rep.skeleton_residual},
                        {"is_convex", rep.is_convex},
                        {"is_symmetric", rep.is_symmetric},
                        {"is_small", rep.is_small},
                        {"unit_skeleton", rep.unit_skeleton}};
    if (rep.upper_bound) j["upper_bound"] = *rep.upper_bound;
    if (rep.gap) j["gap"] = *rep.gap;
    text = j.dump(2) + "\n";
  } else {
    std::ostringstream s;
    s << "n                 " << v.size() << "\n";
    s << "area              " << fmt("%.17g", rep.area) << "\n";
    s << "diameter          " << fmt("%.17g", rep.diameter) << "\n";
    s << "symmetry_residual " << fmt("%.3g", rep.symmetry_residual) << "\n";
    s << "skeleton_residual " << fmt("%.3g", rep.skeleton_residual) << "\n";
    s << "is_convex         " << (rep.is_convex ? "true" : "false") << "\n";
    s << "is_symmetric      " << (rep.is_symmetric ? "true" : "false") << "\n";
    s << "is_small          " << (rep.is_small ? "true" : "false") << "\n";
    s << "unit_skeleton     " << (rep.unit_skeleton ? "true" : "false") << "\n";
    text = s.str();
  }
  out << text;
  return rep.all_valid() ? kOk : kValidation;
}

int cmd_render(const std::string& path, const std::string& out_path, std::ostream& out) {
  const std::vector<Point> v = load_vertices(path);
  if (v.size() < 6 || v.size() % 2 != 0) {
    throw DomainError("expected an even number of vertices >= 6");
  }
  emit(render_svg(v), out_path, out);
  return kOk;
}

}  // namespace

double Cell::delta() const { return std::abs(computed - reference); }

bool TableReport::ok() const {
  for (const TableRow& row : rows) {
    if (!row.error.empty()) return false;
    for (const Cell& c : row.cells) {
      if (!c.ok()) return false;
    }
  }
  return true;
}

TableReport table2(const std::vector<int>& orders, int workers) {
  TableReport t;
  t.which = "table2";
  t.rows = parallel_rows(orders.size(), workers, [&](std::size_t i) {
    const int r = orders[i];
    const auto& ref = reference::asymptotic_row(r);
    TableRow row;
    row.key = "r=" + std::to_string(r);
    if (r == 0) {
      row.cells.push_back({"q", kQ0, ref.q, 1e-15});
    } else if (r <= 3) {
      const CubicMinimum m = minimize_cubic(r);
      row.cells.push_back({"q", m.q, ref.q, 1e-12});
      row.cells.push_back({"a", m.point[0], *ref.a, 1e-9});
      if (r >= 2) row.cells.push_back({"b1", m.point[1], ref.b.at(0), 1e-9});
      if (r == 3) row.cells.push_back({"c1", m.point[2], ref.c.at(0), 1e-9});
    } else {
      const AsymptoticFit fit = estimate_q_numeric(r, kExtrapolationGrid);
      row.cells.push_back({"q", fit.q, ref.q, 1e-5});
    }
    return row;
  });
  return t;
}

TableReport table3(const std::vector<int>& ns, int workers) {
  TableReport t;
  t.which = "table3";
  t.rows = parallel_rows(ns.size(), workers, [&](std::size_t i) {
    const int n = ns[i];
    const auto& tab = reference::small_optimum_table();
    const auto it = std::find_if(tab.begin(), tab.end(), [n](const auto& r) { return r.n == n; });
    if (it == tab.end()) throw DomainError("no reference row for n = " + std::to_string(n));
    const ConstructResult res = construct_q(n, n / 2 - 2);
    const std::vector<double> x = pack_free(res.params);
    TableRow row;
    row.key = "n=" + std::to_string(n);
    row.cells.push_back({"area", res.area, it->area, 1e-9});
    row.cells.push_back({"alpha", x[0], it->alpha, 1e-6});
    std::size_t k = 1;
    for (std::size_t b = 0; b < it->betas.size(); ++b, ++k) {
      row.cells.push_back({"beta" + std::to_string(b + 1), x.at(k), it->betas[b], 1e-6});
    }
    for (std::size_t g = 0; g < it->gammas.size(); ++g, ++k) {
      row.cells.push_back({"gamma" + std::to_string(g + 1), x.at(k), it->gammas[g], 1e-6});
    }
    return row;
  });
  return t;
}

TableReport table5(const std::vector<int>& ns, int workers) {
  TableReport t;
  t.which = "table5";
  t.rows = parallel_rows(ns.size(), workers, [&](std::size_t i) {
    const int n = ns[i];
    const reference::AreaRow* ref = reference::find_area_row(n);
    if (!ref) throw DomainError("no reference row for n = " + std::to_string(n));
    TableRow row;
    row.key = "n=" + std::to_string(n);
    row.cells.push_back({"regular", regular_area(n), ref->regular, 1e-9});
    for (int r = 0; r < 5; ++r) {
      const auto& value = ref->reduced[static_cast<std::size_t>(r)];
      if (!value) continue;
      row.cells.push_back({"Q_r" + std::to_string(r), construct_q(n, r).area, *value, 1e-8});
    }
    row.cells.push_back({"P*", solve_full_nlp(n).area, ref->symmetric_optimum, 1e-8});
    row.cells.push_back({"bound", upper_bound(n), ref->upper_bound, 1e-9});
    return row;
  });
  return t;
}

nlohmann::json to_json(const TableReport& t) {
  nlohmann::json rows = nlohmann::json::array();
  for (const TableRow& row : t.rows) {
    nlohmann::json cells = nlohmann::json::array();
    for (const Cell& c : row.cells) {
      cells.push_back({{"label", c.label},
                       {"computed", c.computed},
                       {"reference", c.reference},
                       {"delta", c.delta()},
                       {"tolerance", c.tolerance},
                       {"ok", c.ok()}});
    }
    nlohmann::json r = {{"key", row.key}, {"cells", cells}};
    if (!row.error.empty()) r["error"] = row.error;
    rows.push_back(r);
  }
  return {{"which", t.which}, {"rows", rows}, {"ok", t.ok()}};
}

std::string to_text(const TableReport& t) {
  std::ostringstream s;
  s << t.which << "\n";
  for (const TableRow& row : t.rows) {
    s << row.key << "\n";
    if (!row.error.empty()) s << "  error: " << row.error << "\n";
    for (const Cell& c : row.cells) {
      char line[160];
      std::snprintf(line, sizeof line, "  %-8s computed %.16f  reference %.16f  delta %.2e %s\n",
                    c.label.c_str(), c.computed, c.reference, c.delta(), c.ok() ? "ok" : "FAIL");
      s << line;
    }
  }
  s << (t.ok() ? "all cells within tolerance\n" : "some cells outside tolerance\n");
  return s.str();
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Small polygons with large area: constructions, optimization and tables"};
  app.require_subcommand(1);

  Common c;
  auto add_common = [&](CLI::App* sub, bool need_n) {
    auto* opt = sub->add_option("--n", c.n, "number of vertices (even, >= 6)");
    if (need_n) opt->required();
    sub->add_option("--format", c.format, "output format")
        ->check(CLI::IsMember({"json", "csv", "svg", "text"}));
    sub->add_option("--tol", c.tol, "solver tolerance")->check(CLI::PositiveNumber);
    sub->add_option("--max-iter", c.max_iter, "iteration limit")->check(CLI::PositiveNumber);
    sub->add_option("--multistart", c.multistart, "extra jittered starts")
        ->check(CLI::NonNegativeNumber);
    sub->add_option("--seed", c.seed, "multistart seed");
    sub->add_option("--out", c.out_path, "write to this file instead of stdout");
  };

  auto* bound = app.add_subcommand("bound", "upper bound and regular polygon area");
  add_common(bound, true);

  auto* construct = app.add_subcommand("construct", "optimal member of the reduced family");
  add_common(construct, true);
  int r_value = 0;
  construct->add_option("--r", r_value, "order of the reduced family (default: theorem order)")
      ->check(CLI::NonNegativeNumber);

  auto* optimize = app.add_subcommand("optimize", "full symmetric-skeleton optimum");
  add_common(optimize, true);

  auto* table = app.add_subcommand("table", "compare against the published tables");
  std::string which;
  std::vector<int> ns;
  std::vector<int> rs;
  int workers = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  std::string table_format = "text";
  table->add_option("--which", which, "table2, table3 or table5")
      ->required()
      ->check(CLI::IsMember({"table2", "table3", "table5"}));
  table->add_option("--n", ns, "values of n")->delimiter(',');
  table->add_option("--r", rs, "values of r")->delimiter(',');
  table->add_option("--workers", workers, "worker threads")->check(CLI::PositiveNumber);
  table->add_option("--format", table_format, "output format")
      ->check(CLI::IsMember({"json", "text"}));

  auto* verify = app.add_subcommand("verify", "validate a polygon file (JSON record or CSV)");
  std::string verify_path;
  std::string verify_format = "text";
  verify->add_option("file", verify_path, "polygon file")->required();
  verify->add_option("--format", verify_format, "output format")
      ->check(CLI::IsMember({"json", "text"}));

  auto* render = app.add_subcommand("render", "draw a polygon file as SVG");
  std::string render_path;
  std::string render_out;
  render->add_option("file", render_path, "polygon file")->required();
  render->add_option("--out", render_out, "SVG path (stdout if omitted)");

  std::vector<const char*> argv;
  argv.push_back("smallpoly");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }
  if (construct->count("--r") > 0) c.r = r_value;

  try {
    if (*bound) return cmd_bound(c, out);
    if (*construct) return cmd_construct(c, out);
    if (*optimize) return cmd_optimize(c, out);
    if (*table) {
      TableReport rep;
      if (which == "table2") {
        rep = table2(rs.empty() ? std::vector<int>{1, 2, 3} : rs, workers);
      } else if (which == "table3") {
        rep = table3(ns.empty() ? std::vector<int>{6, 8, 10, 12} : ns, workers);
      } else {
        if (ns.empty()) {
          for (const auto& row : reference::area_table()) ns.push_back(row.n);
        }
        rep = table5(ns, workers);
      }
      out << (table_format == "json" ? to_json(rep).dump(2) + "\n" : to_text(rep));
      return rep.ok() ? kOk : kValidation;
    }
    if (*verify) return cmd_verify(verify_path, verify_format, out);
    if (*render) return cmd_render(render_path, render_out, out);
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const OptimizationFailure& e) {
    err << "error: " << e.what() << "\n";
    return kNumerical;
  } catch (const ConstraintViolation& e) {
    err << "error: " << e.what() << " (residual " << e.residual() << ")\n";
    return kNumerical;
  }
  return kUsage;
}

}  // namespace smallpoly::cli
