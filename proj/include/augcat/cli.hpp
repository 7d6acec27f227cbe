#pragma once

#include <iosfwd>

namespace augcat {

// Exit codes: 0 success, 1 property violated, 2 usage, input or guard error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace augcat
