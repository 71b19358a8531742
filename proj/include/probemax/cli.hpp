#ifndef PROBEMAX_CLI_HPP
#define PROBEMAX_CLI_HPP

#include <iosfwd>

namespace probemax {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitInternal = 2;

/// Entry point of the `probemax` tool. Results go to `out` (or the --out
/// file), diagnostics to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace probemax

#endif  // PROBEMAX_CLI_HPP
