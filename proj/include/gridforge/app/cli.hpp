#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gridforge::app {

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;
inline constexpr int kExitIo = 2;
inline constexpr int kExitVerifyFailed = 3;
inline constexpr int kExitHashMismatch = 4;

inline constexpr int kDefaultPort = 8877;

// The `gridforge` command line. args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

} // namespace gridforge::app
