#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace willmore::cli {

/// Runs willmore-lab on `args` (args[0] is the program name). Reports go to
/// `out` unless --out names a file; diagnostics go to `err`.
/// Returns 0 on success, 1 on a domain error, 2 on a usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace willmore::cli
