#pragma once

// Command-line front end. run() owns argument parsing, dispatch and error
// mapping: returns 0 on success (including --help), 2 on usage or
// validation problems, 3 on numerical non-convergence.

namespace istep::cli {

int run(int argc, const char* const* argv);

}  // namespace istep::cli
