#ifndef HAHN_TOOLS_CLI_HPP
#define HAHN_TOOLS_CLI_HPP

#include <ostream>

namespace hahn::cli
{

// Exit codes: 0 ok, 2 precondition or other library error, 3 parse error.
int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

} // namespace hahn::cli

#endif
