#pragma once

#include <optional>
#include <span>
#include <vector>

namespace roumieu {

/// Open axis-aligned box (lo, hi) in R^n.
class BoxDomain {
 public:
  BoxDomain() = default;
  /// Throws InvalidArgument unless lo < hi componentwise.
  BoxDomain(std::vector<double> lo, std::vector<double> hi);

  std::size_t dimension() const noexcept { return lo_.size(); }
  const std::vector<double>& lo() const noexcept { return lo_; }
  const std::vector<double>& hi() const noexcept { return hi_; }

  double side(std::size_t axis) const { return hi_[axis] - lo_[axis]; }
  double min_side() const;
  double diameter() const;
  std::vector<double> center() const;

  bool contains(std::span<const double> x) const;
  /// Closed box membership with an absolute slack.
  bool contains_closure(std::span<const double> x, double slack = 0.0) const;

  /// omega_delta = {x : lo + delta < x < hi - delta}; empty once 2*delta >= min side.
  std::optional<BoxDomain> shrunk(double delta) const;
  /// Same center, every side scaled by `factor`.
  BoxDomain inflated(double factor) const;

  friend bool operator==(const BoxDomain&, const BoxDomain&) = default;

 private:
  std::vector<double> lo_;
  std::vector<double> hi_;
};

}  // namespace roumieu
