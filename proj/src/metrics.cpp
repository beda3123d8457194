#include "epistral/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "epistral/error.hpp"

namespace epistral {

double gini(std::span<const double> values) {
  if (values.empty()) return 0.0;
  std::vector<double> v(values.begin(), values.end());
  std::sort(v.begin(), v.end());
  const auto n = static_cast<double>(v.size());
  double total = 0.0;
  double weighted = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    total += v[i];
    weighted += (2.0 * static_cast<double>(i + 1) - n - 1.0) * v[i];
  }
  if (total <= 0.0) return 0.0;
  return weighted / (n * total);
}

double zipf_exponent(std::span<const double> frequencies) {
  if (frequencies.size() < kMinZipfPoints)
    throw Error(Errc::TooFewPoints, std::to_string(frequencies.size()) + " < " + std::to_string(kMinZipfPoints));
  std::vector<double> f(frequencies.begin(), frequencies.end());
  for (double x : f)
    if (!(x > 0.0)) throw Error(Errc::InvalidParameter, "frequencies must be positive");
  std::sort(f.begin(), f.end(), std::greater<>());
  const std::size_t n = f.size();
  double mx = 0.0;
  double my = 0.0;
  std::vector<double> xs(n), ys(n);
  // Shifting by the top value keeps a flat distribution exactly flat.
  const double y0 = std::log2(f[0]);
  for (std::size_t i = 0; i < n; ++i) {
    xs[i] = std::log2(static_cast<double>(i + 1));
    ys[i] = std::log2(f[i]) - y0;
    mx += xs[i];
    my += ys[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  return 0.0 - sxy / sxx;
}

}  // namespace epistral
