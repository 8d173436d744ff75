#pragma once

// Command-line configuration and command dispatch.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "limitp/arith.hpp"
#include "limitp/empirical.hpp"
#include "limitp/report.hpp"
#include "limitp/tuple_config.hpp"

namespace limitp {

/// Bad flags or values; what() carries the message, usage() the help text.
class UsageError : public std::invalid_argument {
public:
  UsageError(const std::string& message, std::string usage)
      : std::invalid_argument(message), usage_(std::move(usage)) {}
  const std::string& usage() const { return usage_; }

private:
  std::string usage_;
};

/// --help was given; what() is the help text.
class HelpRequested : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

inline const std::vector<std::string> kCommands = {"constant", "residue", "density", "local", "singular",
                                                   "verify",   "bdh",     "dft-check", "approx"};

struct RunConfig {
  std::string command;
  TupleConfig tuple;
  std::uint64_t x = 1'000'000;
  std::uint64_t q = 4;
  std::int64_t b = -1;              // residue: -1 means every class
  std::uint64_t Q = 100;
  bool series_requested = false;    // constant: add the series cross-check row
  std::uint64_t P = 1'000'000;      // Euler-product truncation
  std::uint64_t pmax = 50;          // local: list primes up to this
  unsigned k = 2;                   // approx
  std::uint64_t y = 2;              // approx
  OutputFormat format = OutputFormat::csv;
  std::string output = "-";
  SieveOptions sieve;
};

/// Parses argv (argv[0] is the program name). A `--config FILE` holds
/// `key=value` lines with the long flag names as keys and repeated
/// `pair=alpha:r` lines; '#' starts a comment. Command-line values win.
/// LIMITP_SEGMENT_SIZE seeds the sieve segment size.
RunConfig parse_config(int argc, const char* const* argv);

/// Runs the configured command. Throws InadmissibleError for commands that
/// need D(p) < p^{r_s} everywhere, CapacityError / OverflowError on limits.
std::vector<EmpiricalReport> run_command(const RunConfig& config);

/// Maps an exception thrown by parse_config or run_command to an exit code.
int exit_code_for(const std::exception& e);

}  // namespace limitp
