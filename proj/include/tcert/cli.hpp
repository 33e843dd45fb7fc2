#pragma once
#include <ostream>
#include <string>
#include <vector>

namespace tcert {

// Full command-line entry point; returns the process exit code.
// 0: success / certified / verified true; 1: not certified / false;
// 2: usage or input error; 3: resource limit hit.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace tcert
