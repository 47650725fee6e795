#pragma once

// Temperate weight functions h(xi + eta) <= (1 + C|eta|)^N h(xi) and their
// ball-supremum regularization h_delta(xi) = sup_{|eta| <= delta} h(xi + eta).

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "roumieu/symbols.hpp"

namespace roumieu {

class WeightFunction {
 public:
  enum class Form { constant, one_plus_norm, p_tilde, power_of };

  static WeightFunction constant(std::size_t n, double c);
  static WeightFunction one_plus_norm(std::size_t n);
  static WeightFunction p_tilde_of(const SymbolPolynomial& q);
  static WeightFunction power_of(const WeightFunction& base, int j);

  Form form() const noexcept { return form_; }
  std::size_t dimension() const noexcept { return n_; }
  /// Polynomial degree of growth: 0, 1, order(Q), or j * base degree.
  int degree() const noexcept;
  double operator()(std::span<const double> xi) const;
  std::string describe() const;

 private:
  WeightFunction() = default;

  Form form_ = Form::constant;
  std::size_t n_ = 0;
  double c_ = 1.0;
  std::shared_ptr<const DerivativeTable> table_;
  std::shared_ptr<const WeightFunction> base_;
  int j_ = 1;
};

struct TemperateSampleConfig {
  double xi_radius = 100.0;
  double eta_radius = 10.0;
  int pairs = 2000;
  std::uint64_t seed = 0;
  /// Number of xi points at which verify_lemma1 checks the sandwich.
  int check_points = 64;
};

struct TemperateFit {
  bool success = false;
  double c = 0.0;
  double n = 0.0;
  /// max over sampled pairs of log h(xi+eta) - N log(1 + C|eta|) - log h(xi).
  double residual = 0.0;
  /// Sampled polynomial growth order of h that bounds N from below.
  double growth_order = 0.0;
  std::vector<double> worst_xi;
  std::vector<double> worst_eta;
};

TemperateFit fit_temperate(const WeightFunction& h, const TemperateSampleConfig& cfg = {});

/// Deterministic (xi, eta) pairs used by fit_temperate.
std::vector<std::pair<std::vector<double>, std::vector<double>>> temperate_pairs(
    std::size_t n, const TemperateSampleConfig& cfg);

struct BallConfig {
  int samples = 512;
  int ascent_steps = 32;
  std::uint64_t seed = 0;
};

/// Offsets eta with |eta| <= delta: the center, +-delta on each axis, and a
/// quasi-uniform fill (half on the sphere, half inside).
std::vector<std::vector<double>> ball_offsets(std::size_t n, double delta, const BallConfig& cfg = {});

struct BallSup {
  double value = 0.0;
  std::vector<double> argmax;
  /// Every offset at which h was evaluated, ascent steps included.
  std::vector<std::vector<double>> offsets;
};

/// Sampled sup plus local ascent from the best sample.
BallSup h_delta(const WeightFunction& h, double delta, std::span<const double> xi,
                const BallConfig& cfg = {});

/// max over the given offsets of h(xi + eta), no ascent.
double ball_max(const WeightFunction& h, std::span<const double> xi,
                const std::vector<std::vector<double>>& offsets);

struct Lemma1Report {
  double c = 0.0;
  double n = 0.0;
  double delta = 0.0;
  int j = 1;
  int points = 0;
  /// min over xi of (h_delta - h) / h; >= 0 expected.
  double lower_margin = 0.0;
  /// min over xi of (h (1 + C delta)^N - h_delta) / h_delta; >= -1e-6 expected.
  double upper_margin = 0.0;
  /// max over xi of |(h^j)_delta - (h_delta)^j| / (h_delta)^j on shared samples.
  double power_residual = 0.0;
  bool sandwich_pass = false;
  bool power_pass = false;
  std::vector<double> worst_xi;
};

inline constexpr double kLemmaTolerance = 1e-6;

/// Checks the sandwich h <= h_delta <= h (1 + C delta)^N and the power identity
/// (h^j)_delta = (h_delta)^j. Constants come from fit_temperate unless given.
Lemma1Report verify_lemma1(const WeightFunction& h, double delta, int j,
                           const TemperateSampleConfig& cfg = {},
                           std::optional<std::pair<double, double>> constants = std::nullopt,
                           const BallConfig& ball = {});

/// xi points at which verify_lemma1 evaluates.
std::vector<std::vector<double>> lemma_points(std::size_t n, const TemperateSampleConfig& cfg);

nlohmann::json to_json(const TemperateFit& f);
nlohmann::json to_json(const Lemma1Report& r);

}  // namespace roumieu
