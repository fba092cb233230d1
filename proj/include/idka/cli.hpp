// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace idka::cli
{

enum ExitCode : int
{
    ok = 0,
    usage = 1,        ///< bad arguments, unknown protocol
    config = 2,       ///< invalid parameter file, malformed formula, setting mismatch
    validation = 3,   ///< element or key failed a cryptographic check
    agreement = 4,    ///< the two roles derived different keys
    invariant = 5,    ///< an analysis probe contradicted the catalog flags
    io = 6,           ///< missing or unwritable file
};

/// Environment variables consulted when the matching option is absent.
inline constexpr const char* params_env = "IDKA_PARAMS";
inline constexpr const char* keys_env = "IDKA_KEYS";

/// Runs one command line (args excludes the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace idka::cli
