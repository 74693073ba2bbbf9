#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "qpipe/phasemap.hpp"
#include "qpipe/readout.hpp"

namespace qpipe::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;   // I/O and other runtime failures
inline constexpr int kExitUsage = 2;     // bad flags, unparsable or out-of-domain input
inline constexpr int kExitQubitCap = 3;  // register larger than the qubit cap

/// `fixed:<p>`, `dynamic` or `dynamic:eta=<v>,w=<v>` (either key may be omitted).
ThresholdPolicy parse_threshold(std::string_view text);

/// `full`, `half` or `signed`.
MappingKind parse_mode(std::string_view text);

/// Runs one subcommand. `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run_cli(int argc, const char* const* argv);

}  // namespace qpipe::cli
