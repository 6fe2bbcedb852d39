#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ebfreq {

// Runs the ebfreq command line. args excludes the program name.
// Returns 0 on success, 1 on data/model/io errors and 2 on usage errors.
// Errors print one line "ebfreq: error[<category>]: <detail>" to err.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ebfreq
