#pragma once

#include <string>
#include <vector>

namespace suplord::cli {

/// Entry point behind the suplord binary.  Returns the process exit code:
/// 0 on success, nonzero with a one-line `error: ...` on stderr otherwise.
int run(int argc, const char* const* argv);

/// Test-friendly overload; args exclude the program name.
int run(const std::vector<std::string>& args);

}  // namespace suplord::cli
