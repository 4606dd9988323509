#pragma once

#include <stdexcept>
#include <string>

namespace unimodal {

enum class ErrorKind {
  precision_exhausted,
  horizon_exceeded,
  budget_exceeded,
  branch_budget_exceeded,
  no_fixed_point,
  superattracting,
  not_in_domain,
  not_contained,
  not_a_cutting_sequence,
  index_out_of_range,
  not_found,
  renormalization_detected,
  hypothesis_violation,
  insufficient_data,
  insufficient_horizon,
  invalid_argument,
  config,
};

const char* to_string(ErrorKind kind) noexcept;

// Process exit code for the command-line tool.
int exit_code(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// Raised by certified predicates when the enclosures at hand cannot decide.
// Callers catch it and retry at a higher precision.
class Undecided : public std::exception {
 public:
  const char* what() const noexcept override { return "undecided at current precision"; }
};

}  // namespace unimodal
