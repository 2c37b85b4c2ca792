#pragma once

#include "peri_couple/error.hpp"

#include <iosfwd>

namespace peri_couple::cli {

enum ExitCode : int {
    exit_ok = 0,
    exit_invalid_spec = 2,
    exit_solver_failure = 3,
};

/// Entry point behind the peri-couple executable. Subcommands: solve, table,
/// convergence, condition, kappa-sweep. Output files are written only after
/// every case has been validated and computed.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace peri_couple::cli
