#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace ifm {

// Malformed states, label mismatches, bad operation inputs.
class StateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Scenario parsing/validation failure; carries the offending field path
// (e.g. "atoms[1].arm") or "syntax" for config text that does not parse.
class ValidationError : public std::runtime_error {
 public:
  ValidationError(std::string field, const std::string& message)
      : std::runtime_error(field.empty() ? message : field + ": " + message),
        field_(std::move(field)) {}

  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

}  // namespace ifm
