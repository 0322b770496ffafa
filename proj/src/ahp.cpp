#include "voi/ahp.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <sstream>

#include "voi/errors.hpp"

namespace voi::ahp {

namespace {

constexpr double kBoundSlack = 1e-12;
constexpr double kSumTolerance = 1e-9;

// Saaty's random consistency index, indexed by n.
constexpr std::array<double, 11> kRandomIndex = {0.0,  0.0,  0.0,  0.58, 0.90, 1.12,
                                                 1.24, 1.32, 1.41, 1.45, 1.49};

std::string cell(std::size_t i, std::size_t j) {
  std::ostringstream out;
  out << '(' << i << ',' << j << ')';
  return out.str();
}

}  // namespace

ComparisonMatrix::ComparisonMatrix(std::initializer_list<std::initializer_list<double>> rows) {
  rows_.reserve(rows.size());
  for (const auto& row : rows) rows_.emplace_back(row);
}

bool ComparisonMatrix::is_square() const noexcept {
  return std::all_of(rows_.begin(), rows_.end(),
                     [n = rows_.size()](const auto& row) { return row.size() == n; });
}

ComparisonMatrix ComparisonMatrix::transposed_reciprocal() const {
  const std::size_t n = size();
  std::vector<std::vector<double>> out(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out[i][j] = 1.0 / rows_[j][i];
  return ComparisonMatrix(std::move(out));
}

std::string ValidationResult::summary() const {
  if (ok()) return "valid";
  std::ostringstream out;
  for (std::size_t k = 0; k < violations.size(); ++k) {
    if (k) out << "; ";
    out << violations[k].message;
  }
  return out.str();
}

ValidationResult validate(const ComparisonMatrix& matrix) {
  const std::size_t n = matrix.size();
  if (!matrix.is_square())
    throw StructuralError("comparison matrix is not square");
  if (n < 2)
    throw StructuralError("comparison matrix must be at least 2x2, got " + std::to_string(n));

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double v = matrix(i, j);
      if (!std::isfinite(v) || v <= 0.0)
        throw DomainError("comparison matrix entry " + cell(i, j) + " is not a positive number");
    }
  }

  ValidationResult result;
  for (std::size_t i = 0; i < n; ++i) {
    if (matrix(i, i) != 1.0)
      result.violations.push_back({Violation::Kind::Diagonal, i, i,
                                   "diagonal entry " + cell(i, i) + " is not 1"});
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (std::abs(matrix(i, j) * matrix(j, i) - 1.0) > kReciprocityTolerance)
        result.violations.push_back({Violation::Kind::Reciprocity, j, i,
                                     "reciprocity violation at " + cell(j, i)});
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double v = matrix(i, j);
      if (v < kSaatyMin * (1.0 - kBoundSlack) || v > kSaatyMax * (1.0 + kBoundSlack))
        result.violations.push_back({Violation::Kind::Bounds, i, j,
                                     "entry " + cell(i, j) + " outside [1/9, 9]"});
    }
  }
  return result;
}

WeightVector principal_eigenvector(const ComparisonMatrix& matrix, EigenOptions options) {
  if (!(options.tolerance > 0.0)) throw DomainError("eigen tolerance must be positive");
  if (auto check = validate(matrix); !check)
    throw DomainError("invalid comparison matrix: " + check.summary());

  const std::size_t n = matrix.size();
  std::vector<double> current(n, 1.0 / static_cast<double>(n));
  std::vector<double> next(n);
  double residual = 0.0;

  for (int iter = 0; iter < options.max_iterations; ++iter) {
    for (std::size_t i = 0; i < n; ++i) {
      double acc = 0.0;
      for (std::size_t j = 0; j < n; ++j) acc += matrix(i, j) * current[j];
      next[i] = acc;
    }
    const double total = std::accumulate(next.begin(), next.end(), 0.0);
    residual = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      next[i] /= total;
      residual = std::max(residual, std::abs(next[i] - current[i]));
    }
    current.swap(next);
    if (residual < options.tolerance) {
      double ratio_sum = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < n; ++j) acc += matrix(i, j) * current[j];
        ratio_sum += acc / current[i];
      }
      return {std::move(current), ratio_sum / static_cast<double>(n)};
    }
  }
  throw ConvergenceError("power iteration did not converge in " +
                             std::to_string(options.max_iterations) + " iterations",
                         std::move(current), residual);
}

double random_index(std::size_t n) {
  if (n < 2 || n >= kRandomIndex.size())
    throw UnsupportedDimensionError("no random index for n = " + std::to_string(n) +
                                    " (supported: 2..10)");
  return kRandomIndex[n];
}

ConsistencyReport consistency_from_lambda(double lambda_max, std::size_t n, double threshold) {
  const double ri = random_index(n);
  ConsistencyReport report;
  report.lambda_max = lambda_max;
  report.consistency_index = (lambda_max - static_cast<double>(n)) / static_cast<double>(n - 1);
  report.consistency_ratio = n == 2 ? 0.0 : report.consistency_index / ri;
  report.is_consistent = report.consistency_ratio <= threshold;
  return report;
}

ConsistencyReport consistency(const ComparisonMatrix& matrix, double threshold,
                              EigenOptions options) {
  // Reject oversized matrices before spending iterations on them.
  if (matrix.is_square()) random_index(std::max<std::size_t>(matrix.size(), 2));
  const WeightVector w = principal_eigenvector(matrix, options);
  return consistency_from_lambda(*w.lambda_max, matrix.size(), threshold);
}

WeightVector synthesize(const WeightVector& attribute_weights,
                        std::span<const std::vector<double>> conditional) {
  const std::size_t attributes = attribute_weights.size();
  if (conditional.size() != attributes)
    throw StructuralError("synthesize: " + std::to_string(attributes) +
                          " attribute weights but " + std::to_string(conditional.size()) +
                          " conditional rows");
  if (attributes == 0) throw StructuralError("synthesize: no attributes");

  const double weight_sum =
      std::accumulate(attribute_weights.weights.begin(), attribute_weights.weights.end(), 0.0);
  if (std::abs(weight_sum - 1.0) > kSumTolerance)
    throw DomainError("synthesize: attribute weights sum to " + std::to_string(weight_sum));

  const std::size_t sources = conditional.front().size();
  std::vector<double> scores(sources, 0.0);
  for (std::size_t a = 0; a < attributes; ++a) {
    const auto& row = conditional[a];
    if (row.size() != sources)
      throw StructuralError("synthesize: conditional row " + std::to_string(a) + " has " +
                            std::to_string(row.size()) + " entries, expected " +
                            std::to_string(sources));
    const double row_sum = std::accumulate(row.begin(), row.end(), 0.0);
    if (std::abs(row_sum - 1.0) > kSumTolerance)
      throw DomainError("synthesize: conditional row " + std::to_string(a) + " sums to " +
                        std::to_string(row_sum));
    for (std::size_t s = 0; s < sources; ++s) scores[s] += attribute_weights[a] * row[s];
  }
  return {std::move(scores), std::nullopt};
}

}  // namespace voi::ahp
