#pragma once

#include <string>
#include <vector>

namespace sweatpp {

// Runs one CLI invocation. Returns 0 on success, 1 on a domain error
// (invalid inputs, saturated samplers, unreadable files), 2 on a usage
// error (unknown subcommand or flag, missing required flag).
int parse_and_dispatch(const std::vector<std::string>& argv);

}  // namespace sweatpp
