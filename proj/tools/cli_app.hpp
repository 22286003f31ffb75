#pragma once

#include <string>
#include <vector>

namespace rgraph::cli {

/// Runs the command-line tool on already-split arguments (argv[0] excluded).
/// Returns the process exit status: 0 on success, 2 on flag errors, 1 on
/// domain or I/O errors. Errors are reported as JSON on stdout.
int run(const std::vector<std::string>& args);

}  // namespace rgraph::cli
