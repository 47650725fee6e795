#include "roumieu/regression.hpp"

#include <cmath>

namespace roumieu {

double least_squares_slope(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = std::min(x.size(), y.size());
  if (n < 2) return 0.0;
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  return sxx == 0.0 ? 0.0 : sxy / sxx;
}

bool increasing_tail(std::span<const double> y, std::size_t count) {
  if (y.size() < count || count < 2) return false;
  for (std::size_t i = y.size() - count + 1; i < y.size(); ++i)
    if (!(y[i] > y[i - 1])) return false;
  return true;
}

std::optional<std::pair<std::int64_t, std::int64_t>> snap_rational(double value,
                                                                   std::int64_t max_denominator,
                                                                   double relative_tolerance) {
  if (!(value > 0.0) || !std::isfinite(value)) return std::nullopt;
  // Walk the Stern-Brocot tree toward value; the first mediant inside the
  // tolerance band is the simplest admissible fraction.
  std::int64_t lp = 0, lq = 1, rp = 1, rq = 0;
  for (int guard = 0; guard < 10000; ++guard) {
    const std::int64_t mp = lp + rp, mq = lq + rq;
    if (mq > max_denominator) return std::nullopt;
    const double m = static_cast<double>(mp) / static_cast<double>(mq);
    if (std::abs(m - value) <= relative_tolerance * value) return std::make_pair(mp, mq);
    if (value < m) {
      rp = mp;
      rq = mq;
    } else {
      lp = mp;
      lq = mq;
    }
  }
  return std::nullopt;
}

}  // namespace roumieu
