#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hx {

inline constexpr const char* kToolVersion = "0.1.0";

/// Runs one `hx` invocation. args[0] is the program name. Exit codes: 0 on
/// success, 1 when `verify` finds the property false, 2 on any error (with a
/// JSON error object written to `err`).
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int dispatch(int argc, char** argv);

}  // namespace hx
