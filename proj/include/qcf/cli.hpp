// Command-line front end shared by the qcf tool and its tests.

#ifndef QCF_CLI_HPP
#define QCF_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace qcf::cli
{

enum ExitCode : int { ok = 0, failure = 1, usage = 2 };

/// Runs one invocation; args excludes the program name. Output goes to out,
/// diagnostics to err. Returns the process exit code.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace qcf::cli

#endif
