#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "epistral/content_types.hpp"
#include "epistral/params.hpp"
#include "epistral/token_amount.hpp"

namespace epistral {

struct Account {
  std::string id;
  TokenAmount ept;          // liquid
  TokenAmount ep;           // staked governance power
  TokenAmount epd;          // debt-backed stable token
  double reputation = 1.0;  // in [0, 100]; only settlement changes it
};

inline constexpr double kInitialReputation = 1.0;
inline constexpr double kMaxReputation = 100.0;

// Outstanding debt-backed token and the EPT locked behind it.
struct DebtBook {
  TokenAmount epd_outstanding;
  TokenAmount ept_backing;         // EPT value locked at issuance
  TokenAmount rounding_burned;     // cumulative sub-unit remainders destroyed
  TokenAmount revaluation_minted;  // EPT paid out above backing on redemption
  double price = 1.0;              // EPT per EPD, set from the scenario path
};

enum class Vote : std::uint8_t { No = 0, Yes = 1 };

struct Proposal {
  std::int64_t id = 0;
  std::string parameter;
  double new_value = 0.0;
  Tick deadline = 0;
  std::map<std::string, Vote> votes;  // re-voting replaces
  bool closed = false;
  bool enacted = false;
  // Tally snapshot, filled when the proposal closes.
  TokenAmount yes_stake;
  TokenAmount no_stake;
};

struct GovernanceBook {
  std::map<std::int64_t, Proposal> proposals;
  std::int64_t next_id = 0;
};

// Canonical world state. Every map iterates in key order so that the state
// hash and all tie-breaks are insertion-order independent.
struct LedgerState {
  std::map<std::string, Account> accounts;
  TokenAmount initial_supply;
  TokenAmount total_minted;
  TokenAmount escrow;  // minted but not yet settled (includes rollover)
  Tick epoch = 0;
  ProtocolParams params;
  ContentRegistry content;
  DebtBook debt;
  GovernanceBook governance;

  const Account& account(const std::string& id) const;
  Account& account(const std::string& id);
  bool has_account(const std::string& id) const { return accounts.contains(id); }
};

const Account& create_account(LedgerState& state, const std::string& id, TokenAmount initial_ept,
                              TokenAmount initial_ep = {});
void transfer(LedgerState& state, const std::string& from, const std::string& to, TokenAmount amount);
void stake(LedgerState& state, const std::string& id, TokenAmount amount);
void unstake(LedgerState& state, const std::string& id, TokenAmount amount);

// Sum of liquid and staked EPT over all accounts.
TokenAmount circulating_ept(const LedgerState& state);
// Circulating EPT plus the EPT locked behind outstanding debt.
TokenAmount total_ept_supply(const LedgerState& state);
TokenAmount total_staked(const LedgerState& state);

// Left side of the supply identity: everything that currently exists in
// EPT terms (accounts, escrow, debt backing).
TokenAmount ept_in_existence(const LedgerState& state);
// Right side: initial + minted + revaluation - burned.
TokenAmount ept_expected(const LedgerState& state);

}  // namespace epistral
