#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "epistral/ledger.hpp"

namespace epistral {

using Digest = std::array<std::uint8_t, 32>;

// SHA-256 over a canonical little-endian serialization of the full state:
// accounts, supply counters, params, live content (with engagements),
// cluster leaders and labels, debt book and governance proposals.
Digest state_hash(const LedgerState& state);

std::string to_hex(const Digest& digest);

}  // namespace epistral
