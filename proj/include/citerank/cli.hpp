#pragma once

#include <iosfwd>

namespace citerank {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitUsage = 2;

/// Entry point of the `citerank` tool:
///
///   citerank score|aggregate|distributions --input <path> [--format csv|jsonl]
///       [--output <path>] [--indicator p100|p100prime|percentile]
///       [--classes 50,75,90,99] [--top-threshold 90] [--log-base 10]
///       [--bin-width 0.25] [--full-precision]
///
/// Output goes to `out` when --output is omitted or "-". Files are written
/// once, after all computation succeeded, via a temporary file and rename.
/// Returns 0 on success, 1 on input/validation errors and 2 on usage errors.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace citerank
