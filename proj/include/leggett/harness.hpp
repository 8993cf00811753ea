#pragma once

#include <functional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

#include "json.hpp"
#include "leggett/bounds.hpp"

namespace leggett {

inline constexpr std::string_view kToolName = "leggett-toolkit";
inline constexpr std::string_view kToolVersion = "0.1.0";

enum ExitCode : int {
  kExitSuccess = 0,
  kExitVerdictFailure = 1,
  kExitConfigError = 2,
  kExitSolverFailure = 3,
};

/// Invalid configuration; maps to kExitConfigError.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// 16 hex digits of FNV-1a over the compact JSON dump (keys sorted).
std::string config_hash(const nlohmann::json& config);

using IdentityEvaluator = std::function<IdentityTerms(const OutcomePair&)>;

/// Checks -1 + |A+B| = AB = 1 - |A-B| over all four outcome pairs and writes
/// one line per pair plus a summary. Returns kExitVerdictFailure if any
/// pair disagrees.
int run_identity_check(std::ostream& out, const IdentityEvaluator& evaluate = pointwise_identity);

/// Entry point of the command-line tool. Subcommands: identity-check,
/// simulate, chsh, bounds, certify, optimize. Returns an ExitCode.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace leggett
