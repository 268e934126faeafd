#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qmult::cli {

// Exit codes: 0 success/pass, 1 verification or replay failure, 2 classify
// found an unexplained or stuck leaf, 3 usage error, 4 incomplete search.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qmult::cli
