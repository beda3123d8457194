#include "epistral/ledger.hpp"

#include "epistral/error.hpp"

namespace epistral {

namespace {

void require_non_negative(TokenAmount amount) {
  if (amount.micro_units() < 0) throw Error(Errc::InvalidParameter, "negative token amount");
}

}  // namespace

const Account& LedgerState::account(const std::string& id) const {
  auto it = accounts.find(id);
  if (it == accounts.end()) throw Error(Errc::UnknownAccount, id);
  return it->second;
}

Account& LedgerState::account(const std::string& id) {
  auto it = accounts.find(id);
  if (it == accounts.end()) throw Error(Errc::UnknownAccount, id);
  return it->second;
}

const Account& create_account(LedgerState& state, const std::string& id, TokenAmount initial_ept,
                              TokenAmount initial_ep) {
  require_non_negative(initial_ept);
  require_non_negative(initial_ep);
  if (state.accounts.contains(id)) throw Error(Errc::DuplicateAccount, id);
  Account acct{id, initial_ept, initial_ep, {}, kInitialReputation};
  state.initial_supply += initial_ept + initial_ep;
  return state.accounts.emplace(id, std::move(acct)).first->second;
}

void transfer(LedgerState& state, const std::string& from, const std::string& to, TokenAmount amount) {
  require_non_negative(amount);
  Account& src = state.account(from);
  Account& dst = state.account(to);
  if (src.ept < amount) throw Error(Errc::InsufficientBalance, from + " has " + src.ept.to_string() + " EPT");
  src.ept -= amount;
  dst.ept += amount;
}

void stake(LedgerState& state, const std::string& id, TokenAmount amount) {
  require_non_negative(amount);
  Account& a = state.account(id);
  if (a.ept < amount) throw Error(Errc::InsufficientBalance, id + " has " + a.ept.to_string() + " EPT");
  a.ept -= amount;
  a.ep += amount;
}

void unstake(LedgerState& state, const std::string& id, TokenAmount amount) {
  require_non_negative(amount);
  Account& a = state.account(id);
  if (a.ep < amount) throw Error(Errc::InsufficientBalance, id + " has " + a.ep.to_string() + " EP");
  a.ep -= amount;
  a.ept += amount;
}

TokenAmount circulating_ept(const LedgerState& state) {
  TokenAmount sum;
  for (const auto& [_, a] : state.accounts) sum += a.ept + a.ep;
  return sum;
}

TokenAmount total_ept_supply(const LedgerState& state) { return circulating_ept(state) + state.debt.ept_backing; }

TokenAmount total_staked(const LedgerState& state) {
  TokenAmount sum;
  for (const auto& [_, a] : state.accounts) sum += a.ep;
  return sum;
}

TokenAmount ept_in_existence(const LedgerState& state) { return total_ept_supply(state) + state.escrow; }

TokenAmount ept_expected(const LedgerState& state) {
  return state.initial_supply + state.total_minted + state.debt.revaluation_minted - state.debt.rounding_burned;
}

}  // namespace epistral
