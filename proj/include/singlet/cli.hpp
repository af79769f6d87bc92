#pragma once

#include <ostream>

namespace singlet::cli {

inline constexpr const char* precision_env = "SINGLET_PRECISION";

// exit codes: 0 ok, 1 selftest failure, 2 validation, 3 non-convergence
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace singlet::cli
