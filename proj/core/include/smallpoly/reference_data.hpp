#pragma once

#include <array>
#include <optional>
#include <vector>

namespace smallpoly::reference {

// Optimal asymptotic coefficients q_r and the scaled parameter limits
// a = lim n alpha / pi, b_i = lim n beta_i / pi, c_i = lim n gamma_i / pi
// for r = 0..16, as published (rounded at the last digit).
struct AsymptoticRow {
  int r = 0;
  double q = 0.0;
  std::optional<double> a;  // absent for r = 0
  std::vector<double> b;
  std::vector<double> c;
};
const std::vector<AsymptoticRow>& asymptotic_table();
const AsymptoticRow& asymptotic_row(int r);

// Optimal polygons Q_{n,n/2-2} for n = 6, 8, 10, 12.
struct SmallOptimumRow {
  int n = 0;
  double area = 0.0;
  double alpha = 0.0;
  std::vector<double> betas;
  std::vector<double> gammas;
};
const std::vector<SmallOptimumRow>& small_optimum_table();

// Area comparison for 20 values of n between 6 and 120 (10 decimals).
struct AreaRow {
  int n = 0;
  double regular = 0.0;
  std::array<std::optional<double>, 5> reduced;  // A(Q_{n,r}) for r = 0..4
  double symmetric_optimum = 0.0;                // A(P_n*)
  double upper_bound = 0.0;
};
const std::vector<AreaRow>& area_table();
const AreaRow* find_area_row(int n);

}  // namespace smallpoly::reference
