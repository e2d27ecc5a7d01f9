#pragma once

// Command-line front end. `run` is the whole program minus process
// plumbing, so tests can drive it with argument vectors.

#include <ostream>
#include <string>
#include <vector>

namespace t3d::cli {

enum Exit : int { kPass = 0, kFail = 1, kUsage = 2 };

/// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace t3d::cli
