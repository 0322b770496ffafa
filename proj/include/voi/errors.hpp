#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace voi {

// Root of every error raised by the library. The CLI maps ConfigError to
// exit status 2 and everything else to 3.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Shape problems: non-square matrices, mismatched dimensions.
class StructuralError : public Error {
 public:
  using Error::Error;
};

// Values outside their admissible range (non-positive judgments, gamma
// outside the Saaty bounds, rows that do not sum to one, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

class UnsupportedDimensionError : public Error {
 public:
  using Error::Error;
};

// Raised when a message is evaluated before its own generation time.
class TemporalOrderError : public Error {
 public:
  using Error::Error;
};

class ConvergenceError : public Error {
 public:
  ConvergenceError(std::string what, std::vector<double> last_iterate,
                   double residual)
      : Error(std::move(what)),
        last_iterate_(std::move(last_iterate)),
        residual_(residual) {}

  const std::vector<double>& last_iterate() const noexcept { return last_iterate_; }
  double residual() const noexcept { return residual_; }

 private:
  std::vector<double> last_iterate_;
  double residual_;
};

// Missing or unparseable configuration. `field()` is a JSON-pointer-like path
// to the offending entry, e.g. "voi_config/conditional_matrices/1".
class ConfigError : public Error {
 public:
  ConfigError(std::string field, const std::string& detail)
      : Error(field.empty() ? detail : "field '" + field + "': " + detail),
        field_(std::move(field)),
        detail_(detail) {}

  const std::string& field() const noexcept { return field_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  std::string field_;
  std::string detail_;
};

}  // namespace voi
