#ifndef EIPVS_CLI_HPP
#define EIPVS_CLI_HPP

#include <iosfwd>

namespace eipvs {

/// Parses argv and runs one subcommand (eip, index, knn, gram, ortho, ecos,
/// bench, cbf). Returns the process exit code; results go to `out`,
/// diagnostics and usage text to `err`.
int cli_dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace eipvs

#endif  // EIPVS_CLI_HPP
