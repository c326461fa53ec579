#include <cmath>

#include "doctest.h"
#include "smallpoly/asymptotics.hpp"
#include "smallpoly/errors.hpp"
#include "smallpoly/geometry.hpp"
#include "smallpoly/reduced.hpp"
#include "smallpoly/reference_data.hpp"

using namespace smallpoly;

namespace {

const std::vector<int> kGrid = {1000, 2000, 5000, 10000, 20000, 50000};

std::vector<double> table_point(int r) {
  const auto& row = reference::asymptotic_row(r);
  std::vector<double> x = {*row.a};
  if (r >= 2) x.push_back(row.b.at(0));
  if (r == 3) x.push_back(row.c.at(0));
  return x;
}

}  // namespace

TEST_CASE("reference table") {
  const auto& t = reference::asymptotic_table();
  REQUIRE(t.size() == 17);
  CHECK(std::abs(t[0].q - 7.0 / 48.0) <= 1e-15);
  for (std::size_t i = 1; i < t.size(); ++i) CHECK(t[i].q < t[i - 1].q);
  CHECK(t[16].q == 0.1150549835233261);
  CHECK_THROWS_AS(reference::asymptotic_row(17), std::out_of_range);
}

TEST_CASE("cubic objectives at the published optima") {
  for (int r = 1; r <= 3; ++r) {
    const CubicObjective c = cubic_objective(r);
    CHECK(std::abs(c.value(table_point(r)) / 192.0 - reference::asymptotic_row(r).q) <= 1e-12);
  }
  CHECK_THROWS_AS(cubic_objective(4), DomainError);
}

TEST_CASE("cubic derivatives against differences") {
  const CubicObjective c = cubic_objective(3);
  const std::vector<double> x = {0.4, 1.3, 0.2};
  const auto g = c.gradient(x);
  const auto h = c.hessian(x);
  for (std::size_t i = 0; i < 3; ++i) {
    auto p = x, m = x;
    p[i] += 1e-6;
    m[i] -= 1e-6;
    CHECK(std::abs((c.value(p) - c.value(m)) / 2e-6 - g[i]) <= 1e-6);
    const auto gp = c.gradient(p), gm = c.gradient(m);
    for (std::size_t j = 0; j < 3; ++j) CHECK(std::abs((gp[j] - gm[j]) / 2e-6 - h[i * 3 + j]) <= 1e-6);
  }
}

TEST_CASE("minimize cubic") {
  const CubicMinimum m1 = minimize_cubic(1);
  CHECK(std::abs(m1.q - q1_closed_form()) <= 1e-13);
  CHECK(std::abs(m1.point[0] - a1_closed_form()) <= 1e-13);
  CHECK(std::abs(m1.q - 0.1164346275953378) <= 1e-12);
  CHECK(std::abs(a1_closed_form() - 0.6524616592755737) <= 1e-13);

  const CubicMinimum m2 = minimize_cubic(2);
  CHECK(std::abs(m2.q - 0.1156971503834968) <= 1e-12);
  CHECK(std::abs(m2.point[0] - 0.6554858160) <= 5e-11);
  CHECK(std::abs(m2.point[1] - 1.0227183748) <= 5e-11);

  const CubicMinimum m3 = minimize_cubic(3);
  CHECK(std::abs(m3.q - 0.1150899130453658) <= 1e-12);
  const auto ref = table_point(3);
  for (std::size_t i = 0; i < 3; ++i) CHECK(std::abs(m3.point[i] - ref[i]) <= 1e-9);
}

TEST_CASE("certificates") {
  const CertificateReport rep = verify_certificates();
  CHECK(std::abs(rep.quartic_residual) <= 1e-12);
  CHECK(std::abs(rep.octic_residual) <= 1e-12);
  CHECK(std::abs(rep.link_residual) <= 1e-13);
  CHECK(rep.passed());

  CHECK(std::abs(evaluate_certificate(q2_certificate(), rep.q2 + 1e-3)) > 1e-7);
  CHECK(std::abs(evaluate_certificate(q3_certificate(), rep.q3 + 1e-3)) > 1e-7);

  // With the x^7 numerator one digit short the polynomial misses q3.
  auto truncated = q3_certificate();
  truncated[1].numerator = "-338067189760423194";
  CHECK(std::abs(evaluate_certificate(truncated, rep.q3)) > 1e-7);

  CHECK(Rational{"-70705", "15876"}.to_double() == -70705.0 / 15876.0);
  CHECK(q3_certificate().size() == 9);
  CHECK(q2_certificate().size() == 5);
}

TEST_CASE("theorem constants") {
  const TheoremConstants t = theorem_constants();
  CHECK(std::abs(t.delta - 0.0733883168566594) <= 1e-15);
  CHECK(t.delta < 8.0 / 109.0);
  CHECK(std::abs(t.improvement - 0.0013796440720117) <= 1e-15);
  CHECK(t.improvement > 1.0 / 725.0);
  CHECK(t.passed());
  CHECK(std::abs((q1_closed_form() - 1.0 / 24.0) - prior_gap_constant()) <= 1e-13);
}

TEST_CASE("numeric extrapolation") {
  const AsymptoticFit f0 = estimate_q_numeric(0, kGrid);
  CHECK(std::abs(f0.q - kQ0) <= 1e-8);
  const AsymptoticFit f1 = estimate_q_numeric(1, kGrid);
  CHECK(std::abs(f1.q - q1_closed_form()) <= 1e-6);
  const AsymptoticFit f4 = estimate_q_numeric(4, kGrid);
  CHECK(std::abs(f4.q - 0.1150687309140004) <= 1e-5);
  CHECK(f1.grid == kGrid);
  CHECK(f1.scaled_deficit.size() == kGrid.size());
  CHECK(f1.residual >= 0.0);

  double prev = f0.q;
  for (int r = 1; r <= 4; ++r) {
    const double q = r == 1 ? f1.q : r == 4 ? f4.q : estimate_q_numeric(r, kGrid).q;
    CHECK(q <= prev);
    prev = q;
  }

  CHECK_THROWS_AS(estimate_q_numeric(1, {2000, 1000}), DomainError);
  CHECK_THROWS_AS(estimate_q_numeric(1, {1000}), DomainError);
  CHECK_THROWS_AS(estimate_q_numeric(3, {8, 1000}), DomainError);
}

TEST_CASE("scaled parameters approach their limits") {
  for (int r = 1; r <= 3; ++r) {
    std::vector<double> s;
    scaled_optimal_deficit(10000, r, &s);
    const auto ref = table_point(r);
    // Layout is alpha, betas, gammas; for r = 3 that is (a, b1, c1).
    for (std::size_t i = 0; i < ref.size(); ++i) CHECK(std::abs(s[i] - ref[i]) <= 1e-3);
  }
}

TEST_CASE("expansion remainder scales like n^-4") {
  for (int r = 0; r <= 4; ++r) {
    const double q = reference::asymptotic_row(r).q;
    double c[2];
    int idx = 0;
    for (int n : {100, 1000}) {
      const double a = construct_q(n, r).area;
      const double pi3 = kPi * kPi * kPi;
      const double model = kPi / 4 - 5 * pi3 / (48.0 * n * n) - q * pi3 / (1.0 * n * n * n);
      c[idx++] = (model - a) * std::pow(n, 4) / (pi3 * kPi);
    }
    CHECK(c[1] > 0.0);
    CHECK(c[1] < 0.1);
    CHECK(std::abs(c[0] - c[1]) <= 0.25 * c[1]);
  }
}
