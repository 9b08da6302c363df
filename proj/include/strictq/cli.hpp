#pragma once

#include <iosfwd>

namespace strictq {

inline constexpr const char* kVersion = "0.1.0";

/// Entry point of the `strictq` tool. Returns 0 on a completed computation
/// (negative answers included), 1 on usage errors, 2 on internal-consistency
/// errors or a failed reproduction claim.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace strictq
