#pragma once

// Hypoellipticity of constant-coefficient symbols and comparison of operator
// strength. The limit |xi| -> infinity is probed by tail-slope regression of
// log-ratios along rays xi = r * theta on a geometric radius grid.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "roumieu/symbols.hpp"

namespace roumieu {

struct RayConfig {
  int directions = 256;
  double r0 = 1.0;
  double rho = 2.0;
  /// Radii are r0 * rho^j for j = 0..radii.
  int radii = 40;
  bool characteristic_search = true;
  /// Tail slopes above this count as divergence.
  double slope_tolerance = 0.05;
  std::uint64_t seed = 0;

  /// Throws InvalidArgument unless directions >= 2n, radii >= 8, rho > 1, r0 > 0.
  void validate(std::size_t n) const;
  std::vector<double> radius_grid() const;
};

/// Quasi-uniform unit directions plus coordinate axes and diagonals; when
/// `principal` is given and the search flag is on, refined directions near
/// zeros of the principal part are appended.
std::vector<std::vector<double>> ray_directions(std::size_t n, const RayConfig& cfg,
                                                const SymbolPolynomial* principal = nullptr);

enum class HypoVerdict { consistent, violated, inconclusive };
std::string to_string(HypoVerdict v);

struct RayWitness {
  MultiIndex beta;
  std::vector<double> direction;
  double radius = 0.0;
  double ratio = 0.0;
  double slope = 0.0;
};

struct BetaSlopes {
  MultiIndex beta;
  double min_slope = 0.0;
  double max_slope = 0.0;
  /// Rays on which Q^(beta) is not identically zero.
  int rays = 0;
  /// -|beta| / slope over decaying rays; 0 when there are none.
  double d_candidate = 0.0;
};

struct HypoReport {
  HypoVerdict verdict = HypoVerdict::inconclusive;
  /// The exponent the ratio was weighted with (check) or the estimate (estimate_d).
  std::optional<double> d_estimate;
  std::optional<std::pair<std::int64_t, std::int64_t>> d_rational;
  /// max over samples of |xi|^{|beta|/d} |Q^(beta)| / (1 + |Q|), beta = 0 included.
  double fitted_c = 0.0;
  std::optional<RayWitness> witness;
  std::vector<BetaSlopes> per_beta;
  int rays = 0;
  /// Share of rays whose tail slopes sit within the tolerance band around 0.
  double flat_fraction = 0.0;
};

/// Tests |xi|^{|beta|/d} |Q^(beta)(xi)| <= C (1 + |Q(xi)|) on the ray grid.
HypoReport check_hypoelliptic(const SymbolPolynomial& q, double d, const RayConfig& cfg = {});

/// Estimates the smallest admissible d from decay rates of |Q^(beta)|/(1+|Q|).
HypoReport estimate_d(const SymbolPolynomial& q, const RayConfig& cfg = {});

enum class StrengthVerdict {
  equally_strong,
  p_weaker,
  q_weaker,
  incomparable,
  constant_strength,
  not_constant_strength
};
std::string to_string(StrengthVerdict v);

struct StrengthWitness {
  std::vector<double> direction;
  double radius = 0.0;
  double ratio = 0.0;
  double slope = 0.0;
  /// Freeze point, for constant-strength reports.
  std::optional<std::vector<double>> x;
  std::string note;
};

struct StrengthReport {
  StrengthVerdict verdict = StrengthVerdict::incomparable;
  /// Observed min and max of P~ / Q~ over all samples.
  double ratio_min = 0.0;
  double ratio_max = 0.0;
  std::optional<StrengthWitness> witness;
  std::uint64_t seed = 0;
  /// Freeze points examined (constant-strength only).
  std::vector<std::vector<double>> points;
};

StrengthReport equally_strong(const SymbolPolynomial& p, const SymbolPolynomial& q,
                              const RayConfig& cfg = {});

/// Freezes P on a points^n lattice plus corners shrunk inward by 1e-3 of the
/// side, and compares every frozen symbol with the one at the box center.
StrengthReport check_constant_strength(const VariableOperator& p, const RayConfig& cfg = {},
                                       int points = 3);

/// Sample points used by check_constant_strength.
std::vector<std::vector<double>> constant_strength_points(const BoxDomain& box, int points);

nlohmann::json to_json(const RayConfig& cfg);
RayConfig ray_config_from_json(const nlohmann::json& doc);
nlohmann::json to_json(const HypoReport& report);
nlohmann::json to_json(const StrengthReport& report);

}  // namespace roumieu
