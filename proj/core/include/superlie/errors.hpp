#pragma once

#include <nlohmann/json.hpp>

#include <stdexcept>
#include <string>
#include <string_view>

namespace superlie {

enum class ErrorCode {
  dimension_mismatch,
  not_invertible,
  not_nilpotent,
  parity_violation,
  unsupported_family,
  invalid_parameter,
  obstruction,
  model_inconsistency,
  convention_mismatch,
  domain_error,
  cap_exceeded,
  parse_error,
};

std::string_view to_string(ErrorCode code);

/// Domain error carrying a machine-readable code and an optional witness.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message,
        nlohmann::json witness = nullptr)
      : std::runtime_error(message), code_(code), witness_(std::move(witness)) {}

  ErrorCode code() const noexcept { return code_; }
  const nlohmann::json& witness() const noexcept { return witness_; }

 private:
  ErrorCode code_;
  nlohmann::json witness_;
};

}  // namespace superlie
