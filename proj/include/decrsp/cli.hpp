#pragma once

#include <ostream>

namespace decrsp {

// Entry point of the decrsp tool. Returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace decrsp
