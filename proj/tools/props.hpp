#pragma once

#include <cstdint>
#include <ostream>

namespace varlp::cli {

// Runs the cross-module invariant suite, printing one line per property.
// Returns true when every property holds.
bool run_props(std::ostream& out, std::uint64_t seed);

}  // namespace varlp::cli
