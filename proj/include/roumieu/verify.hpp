#pragma once

// Numerical checks of a priori estimates on fixture functions. Every check
// fits the smallest constant that makes its inequality hold on the sampled
// cases and reports the margins at that constant.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "roumieu/numerics.hpp"
#include "roumieu/sequences.hpp"
#include "roumieu/symbol_analysis.hpp"

namespace roumieu {

/// d = mu / nu in lowest terms, d >= 1.
class RationalExponent {
 public:
  RationalExponent(std::int64_t mu, std::int64_t nu);

  std::int64_t mu() const noexcept { return mu_; }
  std::int64_t nu() const noexcept { return nu_; }
  double value() const noexcept { return static_cast<double>(mu_) / static_cast<double>(nu_); }
  /// d * m * mu for an operator of order m.
  double gamma(int m) const noexcept { return value() * m * static_cast<double>(mu_); }
  std::string describe() const { return nu_ == 1 ? std::to_string(mu_) : std::to_string(mu_) + "/" + std::to_string(nu_); }

 private:
  std::int64_t mu_;
  std::int64_t nu_;
};

struct FixtureSample {
  std::string id;
  GridFunction u;
};

std::vector<FixtureSample> sample_fixtures(const std::vector<Fixture>& fixtures, const GridSpec& grid);

struct EstimateCase {
  std::string fixture;
  nlohmann::json parameters;
  double lhs = 0.0;
  /// Right-hand side without the fitted constant.
  double rhs_core = 0.0;
  /// The constant enters as C^power * rhs_core.
  int power = 1;
  double rhs = 0.0;
  double margin = 0.0;
  bool flagged = false;
};

struct EstimateReport {
  std::string check;
  std::vector<EstimateCase> cases;
  /// Smallest constant making every unflagged margin >= 0; +inf when none exists.
  double fitted_constant = 0.0;
  std::vector<std::size_t> flagged_cases;
  /// Case that pins the fitted constant, or the first failing one.
  std::optional<std::size_t> witness;
  bool pass = false;
};

inline constexpr double kMarginTolerance = 1e-9;

/// Fits the constant over `cases`, fills rhs/margin and decides the verdict.
EstimateReport finalize_estimate(std::string check, std::vector<EstimateCase> cases);

struct P1Options {
  RayConfig rays{};
  /// Require diameter(omega) < 1.
  bool normalize_diameter = true;
};

/// N_{dm}(R(D)u) <= C (N_{dm}(Q(D)u) + ||u||_{L2(omega)}), N_{dm} = shrink_norm with mu = d*m.
EstimateReport verify_p1(const SymbolPolynomial& q, const SymbolPolynomial& r, const RationalExponent& d,
                         const std::vector<FixtureSample>& fixtures, const BoxDomain& omega, double t,
                         const P1Options& options = {});

struct Prop31Report {
  /// Right-hand side with exponent (k-i)dm and Q^i.
  EstimateReport statement;
  /// Right-hand side with exponent (k-i)gamma and Q^{mu i}; decides the verdict.
  EstimateReport proof;
  bool pass = false;
  std::optional<double> d_estimate;
};

Prop31Report verify_prop31(const SymbolPolynomial& q, const RationalExponent& d,
                           const std::vector<FixtureSample>& fixtures, const BoxDomain& omega, int kmax,
                           const std::vector<double>& deltas, const RayConfig& rays = {});

struct GrowthFit {
  /// exp(max_k (log norm_k - log target_k) / (k + 1)) over unflagged k; 0 when u vanishes.
  double constant = 0.0;
  std::vector<int> labels;
  /// Per-index log constant (log norm_k - log target_k) / (k + 1); -inf for zero norms.
  std::vector<double> log_residuals;
  std::vector<double> log_targets;
  /// Least-squares slope of log norm against log target over usable entries.
  double slope = 0.0;
  std::optional<int> argmax;
  NormSweep sweep;
};

/// target(l) = M_{l m}, norms from iterate_norms.
GrowthFit fit_roumieu_vector(const GridFunction& u, const SymbolPolynomial& q, const RoumieuSequence& m,
                             const BoxDomain& region, double delta, int lmax);
/// target(a) = (M_a)^d, norms from derivative_norms.
GrowthFit fit_roumieu_space(const GridFunction& u, const RoumieuSequence& m, double d, const BoxDomain& region,
                            double delta, int amax);

/// Least-squares slope of the finite log residuals over the last third of indices.
double residual_tail_slope(const GrowthFit& fit);

struct Th1Report {
  GrowthFit vector_fit;
  GrowthFit space_fit;
  double vector_tail_slope = 0.0;
  double space_tail_slope = 0.0;
  /// Constant chain: A from the vector fit, then the intermediate bounds and the
  /// final derivative bound against M_{k m mu}.
  double a = 0.0;
  double a1 = 0.0;
  double a2 = 0.0;
  double a3 = 0.0;
  nlohmann::json preconditions;
  bool pass = false;
};

Th1Report verify_th1(const GridFunction& u, const SymbolPolynomial& q, const RoumieuSequence& m,
                     const RationalExponent& d, const BoxDomain& region, double delta, int lmax, int amax,
                     const RayConfig& rays = {}, std::int64_t pmax = 60);

/// ||P(x0, D)^l u|| <= A^l ||P(x, D)^l u|| for 1 <= l <= lmax.
EstimateReport verify_domination(const VariableOperator& p, const std::vector<double>& x0,
                                 const std::vector<FixtureSample>& fixtures, int lmax, const BoxDomain& region,
                                 double delta, const RayConfig& rays = {});

nlohmann::json to_json(const EstimateCase& c);
nlohmann::json to_json(const EstimateReport& r);
nlohmann::json to_json(const Prop31Report& r);
nlohmann::json to_json(const GrowthFit& f);
nlohmann::json to_json(const Th1Report& r);

/// JSON number, or null for non-finite values.
nlohmann::json finite_or_null(double v);

}  // namespace roumieu
