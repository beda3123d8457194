#include "epistral/token_amount.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace epistral {

TokenAmount TokenAmount::from_tokens(double tokens) {
  return TokenAmount(std::llround(static_cast<long double>(tokens) * kMicroPerToken));
}

std::string TokenAmount::to_string() const {
  const std::int64_t whole = units_ / kMicroPerToken;
  std::int64_t frac = std::llabs(units_ % kMicroPerToken);
  std::string out = (units_ < 0 && whole == 0) ? "-" : "";
  out += std::to_string(whole);
  if (frac != 0) {
    char buf[8];
    std::snprintf(buf, sizeof buf, "%06lld", static_cast<long long>(frac));
    std::string digits(buf);
    while (!digits.empty() && digits.back() == '0') digits.pop_back();
    out += "." + digits;
  }
  return out;
}

}  // namespace epistral
