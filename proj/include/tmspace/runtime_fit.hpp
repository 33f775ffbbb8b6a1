#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace tmspace {

enum class RuntimeKind : std::uint8_t { kConstant, kLinear, kPolynomial, kExponential, kUnclassified };

std::string to_string(RuntimeKind kind);

struct ModelFit {
  RuntimeKind kind = RuntimeKind::kUnclassified;
  int degree = 0;  // polynomial degree; 1 for affine, growth model for exponential
  std::vector<double> coefficients;  // lowest order first; exponential: log t = c0 + c1 n
  double r2 = 0;  // coefficient of determination in step space
  double adjusted_r2 = 0;
};

struct RuntimeClass {
  RuntimeKind kind = RuntimeKind::kUnclassified;
  int degree = 0;  // for kPolynomial
  std::vector<ModelFit> candidates;  // affine, quadratic, cubic, exponential
  double log_fit_quality = 0;  // R^2 of log t against n

  std::string label() const;
};

struct FitOptions {
  double min_quality = 0.98;
  double tie_tolerance = 1e-3;
  // Constant when the relative spread (stddev / mean) is at most this, or the
  // upper half of the inputs all share one step count.
  double constant_spread = 0.02;
};

// points: (input n, steps t) with t > 0. Throws std::invalid_argument with
// fewer than 6 points.
RuntimeClass fit_runtime_class(std::span<const std::pair<double, double>> points,
                               const FitOptions& options = {});

// Ordinary least squares of y on polynomial features 1, x, ..., x^degree.
std::vector<double> polynomial_least_squares(std::span<const double> x, std::span<const double> y, int degree);

}  // namespace tmspace
