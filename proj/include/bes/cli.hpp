#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bes::cli {

/// Runs one command. Exit codes: 0 affirmative, 1 negative with a witness
/// printed, 2 unknown, 3 usage or input error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bes::cli
