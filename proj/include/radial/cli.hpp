#pragma once

#include "radial/fock.hpp"
#include "radial/integral.hpp"
#include "radial/symbol.hpp"

#include <ostream>
#include <string_view>

namespace radial {

/// Process exit codes of radial-mult.
enum ExitCode : int {
    kExitOk = 0,
    kExitUsage = 1,
    kExitMathFailure = 2,
};

/// geometric:S, indicator:N, truncgeom:R:N, constant:C, finite:@file.json,
/// @file.json, or an inline JSON object.
RadialSymbol parse_symbol_arg(std::string_view text);
/// "d1,d2,...:N", @file.json or inline JSON.
FockSpec parse_space_arg(std::string_view text);
/// delta:S[:W], random:K (drawn with `seed`), @file.json or inline JSON.
Representation parse_measure_arg(std::string_view text, std::uint64_t seed);

/// Runs one radial-mult command; reports go to `out` (or --out), diagnostics
/// to `err`. Returns an ExitCode.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace radial
