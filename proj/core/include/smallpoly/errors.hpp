#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace smallpoly {

// Input outside the domain of an operation (odd n, n < 2r+4, angle out of
// range). Maps to a usage error at the command line.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A geometric equality constraint (angle sum, horizontal closure) is violated
// by more than its feasibility tolerance.
class ConstraintViolation : public std::runtime_error {
 public:
  ConstraintViolation(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

// A numerical routine could not reach its tolerance. Carries the best point
// seen so callers can still inspect it.
class OptimizationFailure : public std::runtime_error {
 public:
  OptimizationFailure(const std::string& what, std::vector<double> best_point,
                      double best_value, std::vector<double> residuals)
      : std::runtime_error(what),
        best_point_(std::move(best_point)),
        best_value_(best_value),
        residuals_(std::move(residuals)) {}

  const std::vector<double>& best_point() const noexcept { return best_point_; }
  double best_value() const noexcept { return best_value_; }
  const std::vector<double>& residuals() const noexcept { return residuals_; }

 private:
  std::vector<double> best_point_;
  double best_value_;
  std::vector<double> residuals_;
};

}  // namespace smallpoly
