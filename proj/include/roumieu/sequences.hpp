#pragma once

// Defining sequences (M_p) of Roumieu classes, handled in the log domain.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

namespace roumieu {

class RoumieuSequence {
 public:
  enum class Kind { gevrey, table, power };

  static RoumieuSequence gevrey(double s);
  /// Values M_0, M_1, ...; all strictly positive with M_0 = 1.
  static RoumieuSequence table(std::vector<double> values);

  Kind kind() const noexcept { return kind_; }
  /// log M_p. Throws InvalidArgument beyond the available range.
  double log_m(std::int64_t p) const;
  /// Largest p for which log_m is defined (INT64_MAX for closed forms).
  std::int64_t max_index() const noexcept;

  /// Gevrey order, for gevrey kind.
  double order() const noexcept { return s_; }
  /// Exponent, for power kind.
  double exponent() const noexcept { return d_; }
  const RoumieuSequence* base() const noexcept { return base_.get(); }

  std::string describe() const;

 private:
  friend RoumieuSequence power_sequence(const RoumieuSequence& m, double d);
  RoumieuSequence() = default;

  Kind kind_ = Kind::gevrey;
  double s_ = 1.0;
  std::vector<double> log_values_;
  std::shared_ptr<const RoumieuSequence> base_;
  double d_ = 1.0;
};

/// log p!, exact summation of log k for small p and lgamma beyond.
double log_factorial(std::int64_t p);
/// log of the binomial coefficient C(p, j).
double log_binomial(std::int64_t p, std::int64_t j);

/// (M_p)^d. Nested powers collapse to a single exponent; d = 1 returns m.
RoumieuSequence power_sequence(const RoumieuSequence& m, double d);

/// Two-column text (p, M_p), p = 0, 1, 2, ... consecutively; '#' starts a comment.
RoumieuSequence read_table_file(const std::string& path);
RoumieuSequence parse_table(const std::string& text);

struct ConditionCheck {
  bool pass = true;
  /// First failing p (and j, for the two-index condition).
  std::optional<std::int64_t> first_p;
  std::optional<std::int64_t> first_j;
};

struct InclusionFit {
  bool holds = false;
  double l = 0.0;
  double c = 0.0;
  /// Trend of the increments r_p - r_{p-1} against log p.
  double tail_slope = 0.0;
  std::optional<std::int64_t> witness_p;
};

struct SequenceConditionReport {
  std::int64_t pmax = 0;
  ConditionCheck h1;
  ConditionCheck root_monotone;
  ConditionCheck h3_left;
  /// exp(max over p, j of (log M_p - log M_{p-j} - log M_j) / p).
  double h3_right_h = 0.0;
  std::optional<double> h4_b;
  std::optional<InclusionFit> inclusion;
};

/// Log-domain tolerance of the exact condition checks.
inline constexpr double kConditionTolerance = 1e-9;
/// Tolerance on tail slopes deciding growth of fitted constants.
inline constexpr double kSequenceSlopeTolerance = 1e-3;

SequenceConditionReport check_basic(const RoumieuSequence& m, std::int64_t pmax = 60);

/// Smallest B with M_{pm} <= B^p (M_p)^m over p <= pmax, p a multiple of nu.
double fit_power_bound(const RoumieuSequence& m, std::int64_t mu, std::int64_t nu,
                       std::int64_t pmax = 60);

/// M_p <= C L^p N_p on 0 <= p <= pmax, or divergence.
InclusionFit fit_inclusion(const RoumieuSequence& m, const RoumieuSequence& n, std::int64_t pmax = 60);

struct DominationResult {
  double l = 0.0;
  bool holds = false;
  double c = 0.0;
  double tail_slope = 0.0;
};

/// For each L: minimal C with p! <= C L^p M_p for p <= pmax, or divergence.
std::vector<DominationResult> check_gevrey_domination(const RoumieuSequence& m,
                                                      const std::vector<double>& ls,
                                                      std::int64_t pmax = 200);

nlohmann::json to_json(const SequenceConditionReport& r);
nlohmann::json to_json(const InclusionFit& f);
nlohmann::json to_json(const DominationResult& d);

}  // namespace roumieu
