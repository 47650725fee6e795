#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>

namespace roumieu {

/// Ordinary least-squares slope of y against x. Returns 0 for fewer than two
/// points or a degenerate x spread.
double least_squares_slope(std::span<const double> x, std::span<const double> y);

/// True when the last `count` entries are strictly increasing.
bool increasing_tail(std::span<const double> y, std::size_t count);

/// Simplest fraction p/q (Stern-Brocot order) with q <= max_denominator lying
/// within `relative_tolerance` of value. Requires value > 0.
std::optional<std::pair<std::int64_t, std::int64_t>> snap_rational(double value,
                                                                   std::int64_t max_denominator = 12,
                                                                   double relative_tolerance = 0.02);

}  // namespace roumieu
