#pragma once

namespace chlab {

// Entry point behind the `chlab` binary. Subcommands: solve, sweep, verify,
// norms, oracle. Returns 0 on success, 1 on assertion failure, 2 on
// usage/config errors.
int cli_main(int argc, char** argv);

} // namespace chlab
