#include "epistral/token_economy.hpp"

#include <cmath>
#include <vector>

#include "epistral/error.hpp"

namespace epistral {

namespace {

__extension__ typedef __int128 i128;

long double price_of(const LedgerState& state) {
  if (!(state.debt.price > 0.0) || !std::isfinite(state.debt.price))
    throw Error(Errc::InvalidParameter, "EPD price must be positive");
  return state.debt.price;
}

bool within_cap(long double debt_value, long double supply, double cap) {
  if (supply <= 0.0L) return debt_value <= 0.0L;
  return debt_value / supply <= static_cast<long double>(cap);
}

}  // namespace

double diversity_factor(std::span<const std::int64_t> counts) {
  std::size_t nonempty = 0;
  for (auto n : counts) nonempty += n > 0 ? 1 : 0;
  if (nonempty <= 1) return 0.0;
  return feed_entropy(counts) / std::log2(static_cast<double>(nonempty));
}

double diversity_factor(const ContentRegistry& registry) {
  std::vector<std::int64_t> counts;
  counts.reserve(registry.members.size());
  for (const auto& [_, ids] : registry.members) counts.push_back(static_cast<std::int64_t>(ids.size()));
  return diversity_factor(counts);
}

double balance_factor(const EpochTxHistogram& hist) {
  if (hist.total() <= 0) return 0.0;
  return feed_entropy(hist.counts) / 2.0;
}

TokenAmount mint_epoch(Tick epoch, double diversity, double balance, const ProtocolParams& params) {
  if (epoch < 0) throw Error(Errc::InvalidParameter, "negative epoch");
  const long double amount = static_cast<long double>(params.base_mint.micro_units()) *
                             std::pow(static_cast<long double>(params.decay), static_cast<long double>(epoch)) *
                             static_cast<long double>(diversity) * static_cast<long double>(balance);
  return TokenAmount::micro(std::llround(amount));
}

void credit_mint(LedgerState& state, TokenAmount amount) {
  state.escrow += amount;
  state.total_minted += amount;
}

double debt_ratio(const LedgerState& state) {
  const TokenAmount supply = total_ept_supply(state);
  if (supply.is_zero()) return 0.0;
  const long double value = static_cast<long double>(state.debt.epd_outstanding.micro_units()) * price_of(state);
  return static_cast<double>(value / static_cast<long double>(supply.micro_units()));
}

TokenAmount debt_headroom(const LedgerState& state) {
  const long double price = price_of(state);
  const long double supply = static_cast<long double>(total_ept_supply(state).micro_units());
  const long double room =
      supply * state.params.debt_ratio_cap - static_cast<long double>(state.debt.epd_outstanding.micro_units()) * price;
  if (room <= 0.0L) return {};
  auto a = static_cast<std::int64_t>(std::floor(room));
  while (a > 0) {
    const auto epd = static_cast<std::int64_t>(std::floor(static_cast<long double>(a) / price));
    const long double v = static_cast<long double>(state.debt.epd_outstanding.micro_units() + epd) * price;
    auto backed = static_cast<std::int64_t>(std::floor(static_cast<long double>(epd) * price));
    if (backed > a) backed = a;
    if (within_cap(v, supply - static_cast<long double>(a - backed), state.params.debt_ratio_cap)) break;
    --a;
  }
  return TokenAmount::micro(a);
}

TokenAmount convert_to_debt(LedgerState& state, const std::string& id, TokenAmount ept_amount) {
  if (ept_amount.micro_units() < 0) throw Error(Errc::InvalidParameter, "negative amount");
  Account& acct = state.account(id);
  if (acct.ept < ept_amount) throw Error(Errc::InsufficientBalance, id + " has " + acct.ept.to_string() + " EPT");
  const long double price = price_of(state);
  const auto epd = static_cast<std::int64_t>(std::floor(static_cast<long double>(ept_amount.micro_units()) / price));
  auto backed = static_cast<std::int64_t>(std::floor(static_cast<long double>(epd) * price));
  if (backed > ept_amount.micro_units()) backed = ept_amount.micro_units();
  // The converted EPT moves into the backing, so supply only drops by the
  // burned remainder.
  const long double supply =
      static_cast<long double>((total_ept_supply(state) - ept_amount + TokenAmount::micro(backed)).micro_units());
  const long double value = static_cast<long double>(state.debt.epd_outstanding.micro_units() + epd) * price;
  if (!within_cap(value, supply, state.params.debt_ratio_cap))
    throw Error(Errc::DebtCapExceeded, "ratio would reach " + std::to_string(static_cast<double>(value / supply)));
  acct.ept -= ept_amount;
  acct.epd += TokenAmount::micro(epd);
  state.debt.epd_outstanding += TokenAmount::micro(epd);
  state.debt.ept_backing += TokenAmount::micro(backed);
  state.debt.rounding_burned += ept_amount - TokenAmount::micro(backed);
  return TokenAmount::micro(epd);
}

TokenAmount convert_from_debt(LedgerState& state, const std::string& id, TokenAmount epd_amount) {
  if (epd_amount.micro_units() < 0) throw Error(Errc::InvalidParameter, "negative amount");
  Account& acct = state.account(id);
  if (acct.epd < epd_amount) throw Error(Errc::InsufficientBalance, id + " has " + acct.epd.to_string() + " EPD");
  const long double price = price_of(state);
  const auto ept = static_cast<std::int64_t>(std::floor(static_cast<long double>(epd_amount.micro_units()) * price));
  auto& book = state.debt;
  const std::int64_t released =
      epd_amount == book.epd_outstanding
          ? book.ept_backing.micro_units()
          : static_cast<std::int64_t>(static_cast<i128>(book.ept_backing.micro_units()) * epd_amount.micro_units() /
                                      book.epd_outstanding.micro_units());
  if (ept <= released)
    book.rounding_burned += TokenAmount::micro(released - ept);
  else
    book.revaluation_minted += TokenAmount::micro(ept - released);
  book.ept_backing -= TokenAmount::micro(released);
  book.epd_outstanding -= epd_amount;
  acct.epd -= epd_amount;
  acct.ept += TokenAmount::micro(ept);
  return TokenAmount::micro(ept);
}

}  // namespace epistral
