#pragma once

namespace gfeast {

// Command-line entry point.  Exit codes: 0 converged (or oracle listing),
// 2 residual stalled (previous iterate reported), 3 iteration budget
// exhausted, 1 runtime error, 64 usage error.
int run_cli(int argc, const char* const* argv);

} // namespace gfeast
