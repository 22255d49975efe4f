#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace maxzonoid::cli {

inline constexpr const char* kToolName = "maxzonoid";
inline constexpr const char* kToolVersion = "1.0.0";

enum ExitCode : int { success = 0, usage_error = 1, validation_failure = 2 };

/// Entry point shared by the executable and the tests. argv[0] is the program name.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace maxzonoid::cli
