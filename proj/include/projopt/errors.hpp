#pragma once

#include <stdexcept>
#include <string>

namespace projopt {

/// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Mismatched vector/matrix dimensions between arguments.
struct DimensionError : Error {
  using Error::Error;
};

/// Invalid parameter values (nonpositive eta, infeasible start, bad spec string, ...).
struct ValidationError : Error {
  using Error::Error;
};

/// Malformed input text; `line` is 1-based, 0 when not line-addressable.
struct ParseError : Error {
  int line;
  ParseError(const std::string& msg, int line_no = 0)
      : Error(line_no > 0 ? "line " + std::to_string(line_no) + ": " + msg : msg),
        line(line_no) {}
};

/// An iterative numeric procedure failed; carries the residual it got stuck at.
struct NumericError : Error {
  double residual;
  NumericError(const std::string& msg, double res)
      : Error(msg + " (residual " + std::to_string(res) + ")"), residual(res) {}
};

/// Input expected to be positive semidefinite was not.
struct NotPsdError : NumericError {
  using NumericError::NumericError;
};

/// File or network failure.
struct IoError : Error {
  using Error::Error;
};

}  // namespace projopt
