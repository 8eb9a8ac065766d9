#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace kuperberg {

enum class ErrorCode {
  division_by_zero,
  field_mismatch,
  bad_field,
  parse_error,
  dimension_mismatch,
  singular_antipode,
  not_one_dimensional,
  normalization_failure,
  not_half_integer,
  unknown_algebra,
  bad_params,
  axiom_failure,
  not_invertible,
  not_normalized,
  cocycle_condition_fails,
  identity_violation,
  syntax_error,
  duplicate_point_id,
  unknown_curve_ref,
  non_integral_exponent,
  invalid_diagram,
  unknown_diagram,
  plan_failure,
  budget_exceeded,
  zero_entry,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Parse failure with a 1-based source position.
class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t line, std::size_t column, const std::string& expected)
      : Error(ErrorCode::syntax_error, "line " + std::to_string(line) + ", column " +
                                           std::to_string(column) + ": expected " + expected),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace kuperberg
