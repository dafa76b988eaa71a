#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace rslat::cli {

// Exit codes: 0 success, 1 a checked property failed, 2 usage, input or work-limit error.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rslat::cli
