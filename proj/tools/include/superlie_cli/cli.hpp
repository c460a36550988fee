#pragma once

#include "superlie/realform.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace superlie::cli {

/// Exit statuses: 0 success, 1 domain error, 2 malformed input.
inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;
inline constexpr int kExitMalformed = 2;

const std::vector<std::string>& command_names();

struct CommandRequest {
  std::string command;
  std::string target;     // algebra spec, or example family for verify-examples
  std::string word_path;  // JSON word or supermatrix; "-" reads standard input
  std::string out_path;   // optional copy of the report
  int q = 4;
  int samples = 50;
  int degree = 3;
  std::uint64_t seed = 0;
  bool force = false;
  std::optional<Convention> convention;  // per-command default when unset
};

struct CommandResult {
  int status = kExitOk;
  nlohmann::json report;  // the report, or {code, message, witness?} on error
};

/// Convention used when none is given: literal for the group-level commands
/// (sigma-word, member, verify-examples), graded for the algebra-level ones.
Convention default_convention(const std::string& command);

CommandResult run(const CommandRequest& request);

/// Canonical serialization used on standard output.
std::string render(const nlohmann::json& report);

/// Parses argv, runs the command and writes the rendered report to `out`.
int main_entry(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace superlie::cli
