#pragma once

#include <ostream>

namespace sketchlab {

/// Entry point of the sketchlab command line. Exit codes: 0 success,
/// 1 unexpected error, 2 rejected parameters or malformed input, 3 failed
/// decoding or attack.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace sketchlab
