#pragma once

// Test-only oracles. Nothing here calls into the library except where a
// library object has to be constructed; every quantity that is compared
// against the library is recomputed independently.

#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace oracle {

inline constexpr double kPi = 3.14159265358979323846;

struct P2 {
  double x, y;
};

// v_0 .. v_{n/2} by walking unit edges: edge j leaves v_j in direction
// (sin, cos) of the cumulative angle, alternating sign.
inline std::vector<P2> walk(const std::vector<double>& theta) {
  std::vector<P2> v{{0.0, 0.0}};
  double phi = 0.0;
  for (std::size_t j = 0; j < theta.size(); ++j) {
    phi += theta[j];
    const double s = (j % 2 == 0) ? 1.0 : -1.0;
    v.push_back({v.back().x + s * std::sin(phi), v.back().y + s * std::cos(phi)});
  }
  return v;
}

inline double closure(const std::vector<double>& theta) {
  const std::size_t m = theta.size();
  const auto v = walk(theta);
  return v[m - 1].x - ((m % 2 == 0) ? 0.5 : -0.5);
}

// Full vertex list v_0..v_{n-1} with the mirror half and v_{n-1} = (0,1).
inline std::vector<P2> full_polygon(const std::vector<double>& theta) {
  const std::size_t m = theta.size();
  const std::size_t n = 2 * m;
  auto half = walk(theta);
  std::vector<P2> v(n);
  for (std::size_t k = 0; k < m; ++k) v[k] = half[k];
  for (std::size_t k = m; k + 1 < n; ++k) v[k] = {-half[n - 1 - k].x, half[n - 1 - k].y};
  v[n - 1] = {0.0, 1.0};
  return v;
}

// Sine-difference form of the triangle areas: 2A_k as an alternating sum of
// differences of sines of partial angle sums counted backwards from theta_k.
inline double area_sine_difference(const std::vector<double>& theta) {
  const std::size_t m = theta.size();
  double a = std::sin(theta[0]);
  for (std::size_t k = 2; k < m; ++k) {
    double t = 0.0;
    for (std::size_t i = 0; i + 2 <= k; ++i) {
      double outer = 0.0, inner = 0.0;
      for (std::size_t j = 0; j <= i + 1; ++j) outer += theta[k - j];
      for (std::size_t j = 1; j <= i + 1; ++j) inner += theta[k - j];
      t += ((i % 2 == 0) ? 1.0 : -1.0) * (std::sin(outer) - std::sin(inner));
    }
    a += t;
  }
  return a;
}

// Random feasible angle vector: interior angles jittered around pi/(n-1),
// theta_0 from the closure constraint by bisection, the last angle from the
// angle sum. Retries until all bounds hold.
inline std::vector<double> random_feasible(int n, std::mt19937_64& rng, double jitter = 0.02) {
  const std::size_t m = static_cast<std::size_t>(n / 2);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    std::vector<double> th(m);
    const double base = kPi / (n - 1);
    for (std::size_t k = 1; k + 1 < m; ++k) th[k] = base * (1.0 + jitter * u(rng));
    auto c = [&](double t0) {
      th[0] = t0;
      return closure(th);
    };
    double lo = 0.0, hi = kPi / 6.0;
    double flo = c(lo), fhi = c(hi);
    if (flo * fhi > 0.0) continue;
    for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      const double fm = c(mid);
      if ((fm < 0.0) == (flo < 0.0)) {
        lo = mid;
        flo = fm;
      } else {
        hi = mid;
      }
    }
    th[0] = 0.5 * (lo + hi);
    double rest = 0.0;
    for (std::size_t k = 0; k + 1 < m; ++k) rest += th[k];
    th[m - 1] = kPi / 2.0 - rest;
    bool ok = th[0] >= 0.0 && th[0] <= kPi / 6.0;
    for (std::size_t k = 1; k < m; ++k) ok = ok && th[k] >= 0.0 && th[k] <= kPi / 3.0;
    if (ok && std::abs(closure(th)) < 1e-13) return th;
  }
  return {};
}

inline double brute_diameter(const std::vector<P2>& v) {
  double d = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    for (std::size_t j = i + 1; j < v.size(); ++j) {
      d = std::max(d, std::hypot(v[i].x - v[j].x, v[i].y - v[j].y));
    }
  }
  return d;
}

// A printed value with d decimals matches when |x - printed| <= 0.5e-d, with
// a hair of slack for values that sit exactly on a rounding boundary.
inline int decimals(const std::string& s) {
  const auto dot = s.find('.');
  return dot == std::string::npos ? 0 : static_cast<int>(s.size() - dot - 1);
}

inline bool matches_printed(double x, const std::string& printed) {
  return std::abs(x - std::stod(printed)) <= 0.5 * std::pow(10.0, -decimals(printed)) + 1e-10;
}

// Published optimal angles theta*_0.. for a few n.
struct AngleRow {
  int n;
  std::vector<std::string> theta;
};

inline const std::vector<AngleRow>& optimal_angle_rows() {
  static const std::vector<AngleRow> rows = {
      {6, {"0.350930", "0.653342", "0.566524"}},
      {10, {"0.212610", "0.368131", "0.318611", "0.339137", "0.332306"}},
      {16,
       {"0.132428", "0.223448", "0.194967", "0.206716", "0.202285", "0.204013", "0.203359",
        "0.203580"}},
      {40, {"0.0523626", "0.0872236", "0.0764267", "0.0808253", "0.0791841", "0.0798182",
            "0.0795763", "0.0796689", "0.0796334", "0.0796470", "0.0796418", "0.0796437",
            "0.0796429", "0.0796432", "0.0796431", "0.0796431", "0.0796431", "0.0796431",
            "0.0796431", "0.0796431"}},
  };
  return rows;
}

}  // namespace oracle
