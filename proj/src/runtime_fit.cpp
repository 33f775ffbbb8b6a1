#include "tmspace/runtime_fit.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <stdexcept>

namespace tmspace {

std::string to_string(RuntimeKind kind) {
  switch (kind) {
    case RuntimeKind::kConstant: return "constant";
    case RuntimeKind::kLinear: return "linear";
    case RuntimeKind::kPolynomial: return "polynomial";
    case RuntimeKind::kExponential: return "exponential";
    case RuntimeKind::kUnclassified: return "unclassified";
  }
  return "?";
}

std::string RuntimeClass::label() const {
  if (kind == RuntimeKind::kPolynomial) return "polynomial(" + std::to_string(degree) + ")";
  return to_string(kind);
}

std::vector<double> polynomial_least_squares(std::span<const double> x, std::span<const double> y, int degree) {
  const auto rows = static_cast<Eigen::Index>(x.size());
  Eigen::MatrixXd design(rows, degree + 1);
  Eigen::VectorXd rhs(rows);
  for (Eigen::Index i = 0; i < rows; ++i) {
    double power = 1;
    for (int d = 0; d <= degree; ++d) {
      design(i, d) = power;
      power *= x[static_cast<std::size_t>(i)];
    }
    rhs(i) = y[static_cast<std::size_t>(i)];
  }
  const Eigen::VectorXd beta = design.colPivHouseholderQr().solve(rhs);
  return {beta.data(), beta.data() + beta.size()};
}

namespace {

double evaluate_polynomial(const std::vector<double>& c, double x) {
  double value = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) value = value * x + *it;
  return value;
}

double r_squared(std::span<const double> y, const std::vector<double>& predicted) {
  const double mean = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(y.size());
  double ss_res = 0, ss_tot = 0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    ss_res += (y[i] - predicted[i]) * (y[i] - predicted[i]);
    ss_tot += (y[i] - mean) * (y[i] - mean);
  }
  if (ss_tot == 0) return ss_res == 0 ? 1.0 : 0.0;
  return 1.0 - ss_res / ss_tot;
}

double adjust(double r2, std::size_t samples, int predictors) {
  const auto n = static_cast<double>(samples);
  return 1.0 - (1.0 - r2) * (n - 1) / (n - predictors - 1);
}

ModelFit fit_polynomial(std::span<const double> x, std::span<const double> y, int degree) {
  ModelFit fit;
  fit.kind = degree == 1 ? RuntimeKind::kLinear : RuntimeKind::kPolynomial;
  fit.degree = degree;
  fit.coefficients = polynomial_least_squares(x, y, degree);
  std::vector<double> predicted(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) predicted[i] = evaluate_polynomial(fit.coefficients, x[i]);
  fit.r2 = r_squared(y, predicted);
  fit.adjusted_r2 = adjust(fit.r2, x.size(), degree);
  return fit;
}

ModelFit fit_exponential(std::span<const double> x, std::span<const double> y, double& log_quality) {
  std::vector<double> logs(y.size());
  std::transform(y.begin(), y.end(), logs.begin(), [](double t) { return std::log(t); });
  ModelFit fit;
  fit.kind = RuntimeKind::kExponential;
  fit.degree = 1;
  fit.coefficients = polynomial_least_squares(x, logs, 1);
  std::vector<double> predicted_log(x.size()), predicted(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    predicted_log[i] = fit.coefficients[0] + fit.coefficients[1] * x[i];
    predicted[i] = std::exp(predicted_log[i]);
  }
  log_quality = r_squared(logs, predicted_log);
  fit.r2 = r_squared(y, predicted);
  fit.adjusted_r2 = adjust(fit.r2, x.size(), 1);
  // A decaying or flat exponential is not exponential growth.
  if (fit.coefficients[1] <= 0) fit.adjusted_r2 = fit.r2 = 0;
  return fit;
}

bool looks_constant(std::span<const double> x, std::span<const double> y, double spread) {
  const auto n = static_cast<double>(y.size());
  const double mean = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double var = 0;
  for (double t : y) var += (t - mean) * (t - mean);
  if (std::sqrt(var / n) <= spread * mean) return true;
  // Upper half of the input range (by input value) shares one value.
  const double mid = (x.front() + x.back()) / 2;
  std::optional<double> tail;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] < mid) continue;
    if (tail && *tail != y[i]) return false;
    tail = y[i];
  }
  return tail.has_value();
}

}  // namespace

RuntimeClass fit_runtime_class(std::span<const std::pair<double, double>> points, const FitOptions& options) {
  if (points.size() < 6) throw std::invalid_argument("runtime fit needs at least 6 points");
  std::vector<std::pair<double, double>> sorted(points.begin(), points.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<double> x, y;
  for (const auto& [n, t] : sorted) {
    if (!(t > 0)) throw std::invalid_argument("runtime fit needs positive step counts");
    x.push_back(n);
    y.push_back(t);
  }

  RuntimeClass result;
  result.candidates.push_back(fit_polynomial(x, y, 1));
  result.candidates.push_back(fit_polynomial(x, y, 2));
  result.candidates.push_back(fit_polynomial(x, y, 3));
  result.candidates.push_back(fit_exponential(x, y, result.log_fit_quality));

  if (std::all_of(y.begin(), y.end(), [&](double t) { return t == y.front(); })) {
    result.kind = RuntimeKind::kConstant;
    return result;
  }

  double best = -1e300;
  for (const auto& c : result.candidates) best = std::max(best, c.adjusted_r2);
  // Candidates are listed simplest first.
  const ModelFit* chosen = nullptr;
  for (const auto& c : result.candidates) {
    if (c.adjusted_r2 >= best - options.tie_tolerance) {
      chosen = &c;
      break;
    }
  }
  if (chosen && chosen->adjusted_r2 >= options.min_quality) {
    result.kind = chosen->kind;
    result.degree = chosen->degree;
    return result;
  }
  result.kind = looks_constant(x, y, options.constant_spread) ? RuntimeKind::kConstant
                                                               : RuntimeKind::kUnclassified;
  return result;
}

}  // namespace tmspace
