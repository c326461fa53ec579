#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

namespace smallpoly::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 2,
  kNumerical = 3,   // infeasible or non-convergent
  kValidation = 4,
};

// One reference comparison: computed value, published value, |difference|
// and the tolerance it is judged against.
struct Cell {
  std::string label;
  double computed = 0.0;
  double reference = 0.0;
  double tolerance = 0.0;

  double delta() const;
  bool ok() const { return delta() <= tolerance; }
};

struct TableRow {
  std::string key;  // "n=12" or "r=3"
  std::vector<Cell> cells;
  std::string error;  // set when the row could not be computed
};

struct TableReport {
  std::string which;
  std::vector<TableRow> rows;
  bool ok() const;
};

// Rows are computed by up to `workers` threads and returned in input order.
TableReport table2(const std::vector<int>& orders, int workers);
TableReport table3(const std::vector<int>& ns, int workers);
TableReport table5(const std::vector<int>& ns, int workers);

nlohmann::json to_json(const TableReport& t);
std::string to_text(const TableReport& t);

// Entry point shared by the executable and the tests.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace smallpoly::cli
