#pragma once
// Command-line front end, callable in-process.

#include <ostream>
#include <string>
#include <vector>

namespace tvkit::cli
{
    /// Runs one command. `args` excludes the program name. Returns the exit
    /// status: 0 on success, 2 on any usage, input or library error.
    int run (const std::vector<std::string> &args, std::ostream &out, std::ostream &err);
} // namespace tvkit::cli
