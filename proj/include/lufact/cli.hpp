#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace lufact::cli {

enum class Verb { Check, Lu, Kw, Hv, Ulu, Lul, Plu, Lup, Verify, Selftest };

/// Process exit status. Every command maps to exactly one of these.
enum ExitCode : int {
  kSuccess = 0,          // factorization exists / product verified / selftest passed
  kNoFactorization = 1,  // requested factorization does not exist, or verify mismatch
  kUsageError = 2,       // bad arguments or unparsable input
  kInternalError = 3,    // an internal invariant was violated
};

struct Command {
  Verb verb = Verb::Check;
  /// Matrix file for most verbs; `verify` takes the matrix and then the factor
  /// file (default "-", standard input). "-" reads standard input.
  std::vector<std::string> inputs;
  std::optional<std::size_t> extra;  // kw / hv only
  bool trace = false;
  bool json = false;
};

const char* verb_name(Verb verb) noexcept;

/// Validates and executes one command. Never throws.
int run_command(const Command& cmd, std::ostream& out, std::ostream& err);

/// argv parsing plus run_command.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace lufact::cli
