#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace postselect::cli {

// Exit statuses.
inline constexpr int kExitOk = 0;
inline constexpr int kExitIo = 1;
inline constexpr int kExitDomain = 2;
inline constexpr int kExitUsage = 64;

struct CommandSpec {
  std::string subcommand;  // realize, suite-classify, suite-fit, suite-exact,
                           // mc-scaling, channel, cross-ratio
  std::string input_path;
  std::string output_path;  // "-" is stdout; empty derives from the input stem
  std::string csv_path;     // mc-scaling only
  std::string rho_path;     // channel only: optional state to push through
  std::string points;       // cross-ratio only: "z1,z2,z3,z4", entries real or inf
  bool literal = false;
  std::vector<double> eps;
  int restarts = 20;
  int max_iters = 500;
  std::size_t samples = 2000;
  std::size_t n = 2;
  std::size_t ell = 4;
  unsigned threads = 0;
  std::optional<std::uint64_t> seed;  // flag, else POSTSELECT_SEED
};

// Executes a parsed command. Results go to the output file (or `out` for
// "-"); failures are reported on `err`, domain errors as
// {"error": name, "detail": text}.
int run(const CommandSpec& spec, std::ostream& out, std::ostream& err);

// Parses argv and runs. Unknown subcommands and malformed flags print usage
// and return kExitUsage.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace postselect::cli
