#include "roumieu/box.hpp"

#include <algorithm>
#include <cmath>

#include "roumieu/error.hpp"

namespace roumieu {

BoxDomain::BoxDomain(std::vector<double> lo, std::vector<double> hi)
    : lo_(std::move(lo)), hi_(std::move(hi)) {
  if (lo_.size() != hi_.size()) throw DimensionMismatch("box corners differ in dimension");
  if (lo_.empty()) throw InvalidArgument("box must have dimension >= 1");
  for (std::size_t j = 0; j < lo_.size(); ++j) {
    if (!(lo_[j] < hi_[j]) || !std::isfinite(lo_[j]) || !std::isfinite(hi_[j]))
      throw InvalidArgument("box requires finite lo < hi on every axis");
  }
}

double BoxDomain::min_side() const {
  double s = side(0);
  for (std::size_t j = 1; j < dimension(); ++j) s = std::min(s, side(j));
  return s;
}

double BoxDomain::diameter() const {
  double s = 0.0;
  for (std::size_t j = 0; j < dimension(); ++j) s += side(j) * side(j);
  return std::sqrt(s);
}

std::vector<double> BoxDomain::center() const {
  std::vector<double> c(dimension());
  for (std::size_t j = 0; j < dimension(); ++j) c[j] = 0.5 * (lo_[j] + hi_[j]);
  return c;
}

bool BoxDomain::contains(std::span<const double> x) const {
  if (x.size() != dimension()) throw DimensionMismatch("point dimension differs from box");
  for (std::size_t j = 0; j < x.size(); ++j)
    if (!(lo_[j] < x[j] && x[j] < hi_[j])) return false;
  return true;
}

bool BoxDomain::contains_closure(std::span<const double> x, double slack) const {
  if (x.size() != dimension()) throw DimensionMismatch("point dimension differs from box");
  for (std::size_t j = 0; j < x.size(); ++j)
    if (x[j] < lo_[j] - slack || x[j] > hi_[j] + slack) return false;
  return true;
}

std::optional<BoxDomain> BoxDomain::shrunk(double delta) const {
  if (2.0 * delta >= min_side()) return std::nullopt;
  std::vector<double> lo(lo_), hi(hi_);
  for (std::size_t j = 0; j < lo.size(); ++j) {
    lo[j] += delta;
    hi[j] -= delta;
  }
  return BoxDomain(std::move(lo), std::move(hi));
}

BoxDomain BoxDomain::inflated(double factor) const {
  std::vector<double> lo(lo_), hi(hi_);
  for (std::size_t j = 0; j < lo.size(); ++j) {
    const double c = 0.5 * (lo_[j] + hi_[j]);
    const double half = 0.5 * side(j) * factor;
    lo[j] = c - half;
    hi[j] = c + half;
  }
  return BoxDomain(std::move(lo), std::move(hi));
}

}  // namespace roumieu
