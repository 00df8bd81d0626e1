#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pvi::cli {

// Exit codes: 0 ok, 1 verification failed, 2 configuration error,
// 3 domain/resonance/admissibility error from the library.
enum ExitCode { ok = 0, verifyFailed = 1, configError = 2, libraryError = 3 };

// args excludes the program name
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pvi::cli
