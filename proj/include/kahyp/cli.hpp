#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace kahyp {

// Exit status: 0 success / EQUAL / PASS, 1 INEQUAL / FAIL, 2 usage or input errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace kahyp
