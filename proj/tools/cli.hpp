#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace sdpoly::cli
{

enum ExitCode : int
{
    ok = 0,
    mismatch = 1,
    usage = 2,
    resource = 3
};

// Runs one command line (args excludes the program name). Report text goes to
// `out` unless --out names a file; diagnostics go to `err`.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace sdpoly::cli
