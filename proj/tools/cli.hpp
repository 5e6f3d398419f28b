#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace pauseseg::cli {

/// Runs the `pauseseg` command line. args[0] is the program name. Returns the
/// process exit status: 0 only when the requested manifest or report was fully
/// written.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pauseseg::cli
