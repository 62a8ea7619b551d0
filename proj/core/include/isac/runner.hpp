#pragma once

#include <string>
#include <vector>

#include "isac/config.hpp"

namespace isac {

/// Supported subcommand names, in documentation order.
const std::vector<std::string>& subcommand_names();

/// Executes one subcommand against a resolved configuration and writes its
/// output files into `out_dir` (created when missing). Returns the paths of
/// the files written, in emission order. Output bytes depend only on the
/// configuration (the worker count never changes them).
///
/// Throws ConfigError for configuration-class problems (including an unknown
/// subcommand name) and std::runtime_error for runtime failures such as
/// "no feasible cells".
std::vector<std::string> run_subcommand(const std::string& subcommand, const RunConfig& cfg,
                                        const std::string& out_dir);

}  // namespace isac
