#pragma once

#include <ostream>

namespace diffrep::cli {

/// Exit codes: 0 for holds, vacuous, borderline or not applicable; 1 for
/// usage and input errors; 2 when a check reports a violation.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace diffrep::cli
