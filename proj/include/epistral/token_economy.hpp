#pragma once

#include <array>
#include <cstdint>

#include "epistral/ledger.hpp"

namespace epistral {

enum class TxKind : std::uint8_t { Publish = 0, Engage = 1, Transfer = 2, Stake = 3 };

struct EpochTxHistogram {
  std::array<std::int64_t, 4> counts{};

  void record(TxKind kind, std::int64_t n = 1) { counts[static_cast<std::size_t>(kind)] += n; }
  std::int64_t total() const { return counts[0] + counts[1] + counts[2] + counts[3]; }
};

// Entropy of the live cluster distribution over log2(#nonempty clusters).
double diversity_factor(const ContentRegistry& registry);
double diversity_factor(std::span<const std::int64_t> cluster_counts);

// Entropy of the four-kind transaction mix over log2(4).
double balance_factor(const EpochTxHistogram& hist);

// round(base_mint * decay^epoch * D * B) in micro-units.
TokenAmount mint_epoch(Tick epoch, double diversity, double balance, const ProtocolParams& params);

// Credits `amount` to the reward escrow and the minted total.
void credit_mint(LedgerState& state, TokenAmount amount);

// Value of outstanding EPD in EPT over total EPT supply.
double debt_ratio(const LedgerState& state);

// Largest EPT amount convertible into debt right now without breaching the cap.
TokenAmount debt_headroom(const LedgerState& state);

// Burns `ept_amount` liquid EPT into the debt backing and credits
// floor(ept_amount / price) EPD. The sub-unit remainder is burned.
TokenAmount convert_to_debt(LedgerState& state, const std::string& account, TokenAmount ept_amount);

// Redeems EPD for floor(epd_amount * price) EPT, releasing the matching
// share of the backing.
TokenAmount convert_from_debt(LedgerState& state, const std::string& account, TokenAmount epd_amount);

}  // namespace epistral
