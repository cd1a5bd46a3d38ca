#ifndef MLALPHA_CLI_HPP
#define MLALPHA_CLI_HPP

#include <string>
#include <vector>

namespace mlalpha {

/// Command-line entry point.
/// Subcommands:
///   run --config PATH [--output DIR] [--seed S]   integrate and emit artifacts
///   check --config PATH                            condition report only
///   presets                                        list built-in presets
///   verify [--trials N] [--seed S]                 run the oracle suites
/// Exit codes: 0 success, 1 configuration error, 2 blow-up,
/// 3 invariant violation.
int cli_main(const std::vector<std::string>& args);

} // namespace mlalpha

#endif
