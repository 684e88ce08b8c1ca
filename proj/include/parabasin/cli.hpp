#pragma once

#include <iosfwd>

namespace parabasin::cli {

/// Exit codes: 0 success / certificate pass, 1 certificate failure or
/// computational error (JSON error object on err), 2 usage error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace parabasin::cli
