#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace oinv2::cli {

// Runs one invocation: args is argv without the program name. Results go to
// out, diagnostics to err. Returns the process exit code:
//   0  invariant up to cap / true / success
//   1  not invariant / false / no model
//   2  --complete requested but the cap does not reach the bound
//   64 usage error (also unreadable or unwritable file arguments)
//   65 formula or structure input rejected
//   70 internal invariant violation
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace oinv2::cli
