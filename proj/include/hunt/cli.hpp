#ifndef HUNT_CLI_HPP
#define HUNT_CLI_HPP

#include <string>
#include <vector>

namespace hunt::cli {

// exit status: 0 success, 1 domain error, 2 usage error
int run(int argc, const char* const* argv);
int run(const std::vector<std::string>& args); // without argv[0]

} // namespace hunt::cli

#endif
