#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace nordgeom {

// Exit codes: 0 success, 1 mathematical failure, 2 I/O or usage error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nordgeom
