#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "json_io.hpp"
#include "sympack/packing_checker.hpp"

namespace sympack::cli {

/// Seed used when none is given, so bare invocations are reproducible.
inline constexpr std::uint64_t kDefaultSeed = 20240611;
inline constexpr double kDefaultEpsilon = 1e-3;

enum ExitCode : int {
  kExitOk = 0,
  kExitError = 1,
  kExitInfeasibleVolume = 2,
  kExitUnknown = 3,
};

/// Runs the command line as the `sympack` binary would, writing the JSON
/// result to `out` (or --output) and diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Certificate document for a finished check. `input` is the echoed request.
io::Json certificate_json(const PackingCertificate& cert, const io::Json& input);

/// The two gluing examples plus a delta-ceiling probe.
io::Json psh_demo_report(std::uint64_t samples, std::uint64_t seed);

}  // namespace sympack::cli
