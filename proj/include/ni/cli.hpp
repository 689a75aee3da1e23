#pragma once

namespace ni::cli {

// Subcommands: pt, coat, beta, lc-disk, field, decay, odp, quad, hs, newton-coat.
// Exit codes: 0 success, 2 validation error, 3 numerical failure.
int run(int argc, const char* const* argv);

} // namespace ni::cli
