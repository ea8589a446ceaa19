#pragma once

#include <stdexcept>
#include <string>

namespace dismetrics {

// Base for every error raised by the library. The CLI maps the subclasses
// onto its exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A precondition on an argument was violated (empty input, NaN, mismatched
// dimensions, out-of-range index).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Reading or validating a dataset or report file failed.
class DatasetError : public Error {
 public:
  enum class Kind {
    io,
    malformed,
    schema_mismatch,
    dimension_mismatch,
    row_count_mismatch,
    non_finite,
    partial_grid,
  };

  DatasetError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}

  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

// A numerical solver failed to reach its tolerance or hit an infeasible /
// unbounded subproblem.
class SolverError : public Error {
 public:
  using Error::Error;
};

const char* to_string(DatasetError::Kind kind) noexcept;

}  // namespace dismetrics
