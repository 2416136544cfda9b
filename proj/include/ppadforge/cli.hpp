#pragma once

#include <string>
#include <vector>

namespace ppadforge::cli {

// Exit codes: 0 = satisfied/found, 1 = checked-and-negative, 2 = input
// error, 3 = budget refusal. `argv` includes the program name.
int run(const std::vector<std::string>& argv);

}  // namespace ppadforge::cli
