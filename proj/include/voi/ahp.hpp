#pragma once

// Pairwise-comparison mathematics for the Analytic Hierarchy Process:
// judgment-matrix validation, principal-eigenvector priorities, Saaty
// consistency diagnostics and hierarchical synthesis.
//
// Every function here is pure; nothing is cached between calls.

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace voi::ahp {

inline constexpr double kSaatyMin = 1.0 / 9.0;
inline constexpr double kSaatyMax = 9.0;
inline constexpr double kReciprocityTolerance = 1e-12;
inline constexpr double kDefaultConsistencyThreshold = 0.10;
inline constexpr double kDefaultEigenTolerance = 1e-12;
inline constexpr int kDefaultMaxIterations = 10'000;

// Square matrix of pairwise judgments: entry (i, j) scores item i relative
// to item j. Construction does not check anything; run validate() first.
class ComparisonMatrix {
 public:
  ComparisonMatrix() = default;
  explicit ComparisonMatrix(std::vector<std::vector<double>> rows)
      : rows_(std::move(rows)) {}
  ComparisonMatrix(std::initializer_list<std::initializer_list<double>> rows);

  // Number of rows. Only meaningful as a dimension once is_square() holds.
  std::size_t size() const noexcept { return rows_.size(); }
  bool is_square() const noexcept;

  double operator()(std::size_t row, std::size_t col) const { return rows_[row][col]; }
  double& operator()(std::size_t row, std::size_t col) { return rows_[row][col]; }

  const std::vector<std::vector<double>>& rows() const noexcept { return rows_; }

  // (M^T) with every entry inverted. Identity on reciprocal matrices.
  ComparisonMatrix transposed_reciprocal() const;

  friend bool operator==(const ComparisonMatrix&, const ComparisonMatrix&) = default;

 private:
  std::vector<std::vector<double>> rows_;
};

struct Violation {
  enum class Kind { Diagonal, Reciprocity, Bounds };
  Kind kind;
  std::size_t row;
  std::size_t col;
  std::string message;
};

struct ValidationResult {
  std::vector<Violation> violations;

  bool ok() const noexcept { return violations.empty(); }
  explicit operator bool() const noexcept { return ok(); }
  std::string summary() const;
};

// Checks unit diagonal, reciprocity (relative tolerance 1e-12) and Saaty
// bounds [1/9, 9]. A reciprocity violation on the pair {i, j}, i < j, is
// reported at (j, i).
// Throws StructuralError for non-square input or n < 2, DomainError for a
// non-positive (or non-finite) entry.
ValidationResult validate(const ComparisonMatrix& matrix);

// Normalized priority vector plus the dominant eigenvalue it came from.
// Synthesized scores carry no eigenvalue.
struct WeightVector {
  std::vector<double> weights;
  std::optional<double> lambda_max;

  std::size_t size() const noexcept { return weights.size(); }
  double operator[](std::size_t i) const { return weights[i]; }
};

struct EigenOptions {
  double tolerance = kDefaultEigenTolerance;
  int max_iterations = kDefaultMaxIterations;
};

// Power iteration, renormalizing to unit sum every step. Stops once two
// successive iterates differ by less than `tolerance` in max-norm.
// lambda_max is mean((M w)_i / w_i) at the converged w.
//
// Throws DomainError if the matrix fails validate() or tolerance <= 0, and
// ConvergenceError (carrying the last iterate and residual) if max_iterations
// is exhausted.
WeightVector principal_eigenvector(const ComparisonMatrix& matrix,
                                   EigenOptions options = {});

struct ConsistencyReport {
  double lambda_max = 0.0;
  double consistency_index = 0.0;
  double consistency_ratio = 0.0;
  bool is_consistent = true;
};

// Saaty random index for n in [2, 10]; throws UnsupportedDimensionError
// outside that range.
double random_index(std::size_t n);

// CI = (lambda_max - n) / (n - 1), CR = CI / RI(n); CR is 0 for n = 2.
ConsistencyReport consistency(const ComparisonMatrix& matrix,
                              double threshold = kDefaultConsistencyThreshold,
                              EigenOptions options = {});

// Same as above for an already computed eigenvalue of an n x n matrix.
ConsistencyReport consistency_from_lambda(double lambda_max, std::size_t n,
                                          double threshold = kDefaultConsistencyThreshold);

// score[s] = sum_a attribute_weights[a] * conditional[a][s].
// Throws StructuralError on dimension mismatch and DomainError when a
// conditional row does not sum to one (within 1e-9).
WeightVector synthesize(const WeightVector& attribute_weights,
                        std::span<const std::vector<double>> conditional);

}  // namespace voi::ahp
