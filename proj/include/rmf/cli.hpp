#pragma once

namespace rmf {

// Entry point for the rmf tool. Exit codes: 0 success, 1 domain errors
// (infeasible, not simple, structure mismatch, ...), 2 I/O and parse errors.
int cli_main(int argc, const char* const* argv);

} // namespace rmf
