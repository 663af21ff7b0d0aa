#pragma once

#include "rtl/error.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace rtl::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitCap = 3;
inline constexpr int kExitParse = 4;

int exit_code(ErrorKind kind);

/// Runs one invocation; args excludes the program name. Records go to `out` (errors
/// too, as JSON), warnings and help text to `err`.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err);

}  // namespace rtl::cli
