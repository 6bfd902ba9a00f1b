// The `qws` command line. Exit codes: 0 ok, 1 I/O or format error,
// 2 classifier rejection, 64 usage error.
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qws::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitIo = 1;
inline constexpr int kExitRejected = 2;
inline constexpr int kExitUsage = 64;

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

}  // namespace qws::cli
