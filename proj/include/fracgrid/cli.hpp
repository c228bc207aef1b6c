#pragma once

namespace fracgrid::cli {

/// Entry point behind the fracgrid binary. Exit codes: 0 success, 1
/// verification failure (certification false, envelope violation) or runtime
/// error, 2 usage error.
int run(int argc, const char* const* argv);

}  // namespace fracgrid::cli
