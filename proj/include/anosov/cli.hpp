#pragma once
// Command-line front end. Exit codes: 0 success, 1 verification failure,
// 2 usage error.

#include <iosfwd>

namespace anosov::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerification = 1;
inline constexpr int kExitUsage = 2;

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace anosov::cli
