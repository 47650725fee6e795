#include "roumieu/symbol_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "roumieu/error.hpp"
#include "roumieu/regression.hpp"

namespace roumieu {

namespace {

constexpr double kNoiseFloor = 64.0 * std::numeric_limits<double>::epsilon();
constexpr double kSnap = 1e-12;
constexpr std::size_t kMonotoneWindow = 5;
constexpr double kEpsilonTests[] = {0.1, 0.25, 0.5};
constexpr double kFlatShareLimit = 0.05;
constexpr double kCharacteristicLevel = 1e-6;

double norm2(const std::vector<double>& v) {
  double s = 0.0;
  for (double c : v) s += c * c;
  return std::sqrt(s);
}

std::vector<double> normalized(std::vector<double> v) {
  for (double& c : v)
    if (std::abs(c) < kSnap) c = 0.0;
  const double s = norm2(v);
  for (double& c : v) c /= s;
  for (double& c : v)
    if (std::abs(c) < kSnap) c = 0.0;
  return v;
}

void add_unique(std::vector<std::vector<double>>& dirs, std::vector<double> d, double tol) {
  d = normalized(std::move(d));
  for (const auto& e : dirs) {
    double dist = 0.0;
    for (std::size_t j = 0; j < d.size(); ++j) dist = std::max(dist, std::abs(e[j] - d[j]));
    if (dist <= tol) return;
  }
  dirs.push_back(std::move(d));
}

void add_axes_and_diagonals(std::size_t n, std::vector<std::vector<double>>& dirs) {
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<double> e(n, 0.0);
    e[j] = 1.0;
    add_unique(dirs, e, kSnap);
    e[j] = -1.0;
    add_unique(dirs, e, kSnap);
  }
  if (n < 2) return;
  if (n <= 4) {
    // Every vector in {-1,0,1}^n with at least two nonzero entries.
    std::size_t total = 1;
    for (std::size_t j = 0; j < n; ++j) total *= 3;
    for (std::size_t code = 0; code < total; ++code) {
      std::vector<double> v(n);
      std::size_t c = code;
      int nonzero = 0;
      for (std::size_t j = 0; j < n; ++j) {
        v[j] = static_cast<double>(static_cast<int>(c % 3) - 1);
        nonzero += v[j] != 0.0;
        c /= 3;
      }
      if (nonzero >= 2) add_unique(dirs, v, kSnap);
    }
  } else {
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
      std::vector<double> v(n);
      for (std::size_t j = 0; j < n; ++j) v[j] = (mask >> j) & 1u ? -1.0 : 1.0;
      add_unique(dirs, v, kSnap);
    }
  }
}

std::vector<std::vector<double>> quasi_uniform(std::size_t n, int count, std::uint64_t seed) {
  std::vector<std::vector<double>> out;
  if (n == 1) return {{1.0}, {-1.0}};
  if (n == 2) {
    for (int k = 0; k < count; ++k) {
      const double t = 2.0 * std::numbers::pi * k / count;
      out.push_back({std::cos(t), std::sin(t)});
    }
    return out;
  }
  if (n == 3) {
    const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
    for (int k = 0; k < count; ++k) {
      const double z = 1.0 - 2.0 * (k + 0.5) / count;
      const double rad = std::sqrt(1.0 - z * z);
      const double t = golden * k;
      out.push_back({rad * std::cos(t), rad * std::sin(t), z});
    }
    return out;
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  for (int k = 0; k < count; ++k) {
    std::vector<double> v(n);
    for (double& c : v) c = gauss(rng);
    out.push_back(v);
  }
  return out;
}

double principal_abs(const SymbolPolynomial& principal, const std::vector<double>& theta) {
  return std::abs(eval(principal, theta));
}

// Golden-section minimization of |Q_m| along the unit circle between two angles.
std::vector<double> refine_circle(const SymbolPolynomial& principal, double a, double b) {
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  auto f = [&](double t) { return principal_abs(principal, {std::cos(t), std::sin(t)}); };
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = f(c), fd = f(d);
  for (int it = 0; it < 80; ++it) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = f(d);
    }
  }
  const double t = 0.5 * (a + b);
  return {std::cos(t), std::sin(t)};
}

// Pattern search for a local minimizer of |Q_m| on the sphere.
std::vector<double> refine_sphere(const SymbolPolynomial& principal, std::vector<double> x,
                                  double step) {
  const std::size_t n = x.size();
  double best = principal_abs(principal, x);
  for (int it = 0; it < 200 && step > 1e-15; ++it) {
    bool improved = false;
    for (std::size_t j = 0; j < n && !improved; ++j) {
      for (double sgn : {1.0, -1.0}) {
        auto y = x;
        y[j] += sgn * step;
        y = normalized(y);
        const double v = principal_abs(principal, y);
        if (v < best) {
          best = v;
          x = std::move(y);
          improved = true;
          break;
        }
      }
    }
    if (!improved) step *= 0.5;
  }
  return x;
}

void add_characteristic_directions(std::size_t n, const SymbolPolynomial& principal,
                                   std::vector<std::vector<double>>& dirs,
                                   const std::vector<std::vector<double>>& base, int count) {
  if (n < 2 || principal.is_zero()) return;
  std::vector<double> values(base.size());
  double vmax = 0.0;
  for (std::size_t i = 0; i < base.size(); ++i) {
    values[i] = principal_abs(principal, base[i]);
    vmax = std::max(vmax, values[i]);
  }
  if (vmax == 0.0) return;
  const double level = kCharacteristicLevel * vmax;
  if (n == 2) {
    const std::size_t m = base.size();
    for (std::size_t i = 0; i < m; ++i) {
      const double prev = values[(i + m - 1) % m], next = values[(i + 1) % m];
      if (values[i] > prev || values[i] > next) continue;
      const double t = 2.0 * std::numbers::pi * static_cast<double>(i) / count;
      const double h = 2.0 * std::numbers::pi / count;
      auto theta = refine_circle(principal, t - h, t + h);
      if (principal_abs(principal, theta) <= level) add_unique(dirs, theta, 1e-6);
    }
    return;
  }
  const double spacing = std::sqrt(4.0 * std::numbers::pi / static_cast<double>(base.size()));
  for (std::size_t i = 0; i < base.size(); ++i) {
    // Local minimum among the nearest neighbours (by angular distance).
    std::vector<std::pair<double, std::size_t>> near;
    for (std::size_t k = 0; k < base.size(); ++k) {
      if (k == i) continue;
      double dot = 0.0;
      for (std::size_t j = 0; j < n; ++j) dot += base[i][j] * base[k][j];
      near.emplace_back(-dot, k);
    }
    const std::size_t keep = std::min<std::size_t>(8, near.size());
    std::partial_sort(near.begin(), near.begin() + static_cast<std::ptrdiff_t>(keep), near.end());
    bool is_min = true;
    for (std::size_t k = 0; k < keep && is_min; ++k) is_min = values[i] <= values[near[k].second];
    if (!is_min) continue;
    auto theta = refine_sphere(principal, base[i], spacing);
    if (principal_abs(principal, theta) <= level) add_unique(dirs, theta, 1e-6);
  }
}

double cleaned_abs(const SymbolPolynomial& q, std::span<const double> xi) {
  const double v = std::abs(eval(q, xi));
  return v <= kNoiseFloor * eval_abs(q, xi) ? 0.0 : v;
}

// Magnitudes of Q and of every nonzero derivative along one ray.
struct RaySamples {
  std::vector<double> q_abs;                   // per radius
  std::vector<std::vector<double>> deriv_abs;  // per table entry, per radius
};

RaySamples sample_ray(const DerivativeTable& table, const std::vector<double>& theta,
                      const std::vector<double>& radii) {
  RaySamples s;
  const auto& entries = table.entries();
  s.q_abs.resize(radii.size());
  s.deriv_abs.assign(entries.size(), std::vector<double>(radii.size()));
  std::vector<double> xi(theta.size());
  for (std::size_t j = 0; j < radii.size(); ++j) {
    for (std::size_t k = 0; k < xi.size(); ++k) xi[k] = radii[j] * theta[k];
    for (std::size_t e = 0; e < entries.size(); ++e) s.deriv_abs[e][j] = cleaned_abs(entries[e].second, xi);
    s.q_abs[j] = s.deriv_abs[0][j];
  }
  return s;
}

struct TailFit {
  bool valid = false;
  double slope = 0.0;
  std::vector<double> tail_values;
};

// Least-squares slope of log(values) against log(radii) over the last half of
// the grid, ignoring zero samples.
TailFit tail_fit(const std::vector<double>& radii, const std::vector<double>& values) {
  TailFit f;
  const std::size_t start = radii.size() / 2;
  std::vector<double> lx, ly;
  for (std::size_t j = start; j < radii.size(); ++j) {
    if (values[j] > 0.0 && std::isfinite(values[j])) {
      lx.push_back(std::log(radii[j]));
      ly.push_back(std::log(values[j]));
      f.tail_values.push_back(values[j]);
    }
  }
  if (lx.size() < 3) return f;
  f.valid = true;
  f.slope = least_squares_slope(lx, ly);
  return f;
}

void check_symbol(const SymbolPolynomial& q, const RayConfig& cfg) {
  if (q.is_zero()) throw InvalidArgument("symbol must be nonzero");
  cfg.validate(q.dimension());
}

}  // namespace

void RayConfig::validate(std::size_t n) const {
  if (directions < static_cast<int>(2 * n)) throw InvalidArgument("ray config: directions must be >= 2n");
  if (radii < 8) throw InvalidArgument("ray config: radii (J) must be >= 8");
  if (!(rho > 1.0)) throw InvalidArgument("ray config: rho must exceed 1");
  if (!(r0 > 0.0)) throw InvalidArgument("ray config: r0 must be positive");
  if (!(slope_tolerance > 0.0)) throw InvalidArgument("ray config: slope tolerance must be positive");
}

std::vector<double> RayConfig::radius_grid() const {
  std::vector<double> r(static_cast<std::size_t>(radii) + 1);
  for (int j = 0; j <= radii; ++j) r[static_cast<std::size_t>(j)] = r0 * std::pow(rho, j);
  return r;
}

std::vector<std::vector<double>> ray_directions(std::size_t n, const RayConfig& cfg,
                                                const SymbolPolynomial* principal) {
  cfg.validate(n);
  std::vector<std::vector<double>> dirs;
  add_axes_and_diagonals(n, dirs);
  const auto base = quasi_uniform(n, cfg.directions, cfg.seed);
  for (const auto& d : base) add_unique(dirs, d, kSnap);
  if (principal != nullptr && cfg.characteristic_search)
    add_characteristic_directions(n, *principal, dirs, base, cfg.directions);
  return dirs;
}

std::string to_string(HypoVerdict v) {
  switch (v) {
    case HypoVerdict::consistent: return "hypoelliptic-consistent";
    case HypoVerdict::violated: return "violated";
    case HypoVerdict::inconclusive: return "inconclusive";
  }
  return "?";
}

std::string to_string(StrengthVerdict v) {
  switch (v) {
    case StrengthVerdict::equally_strong: return "equally-strong";
    case StrengthVerdict::p_weaker: return "P-weaker";
    case StrengthVerdict::q_weaker: return "Q-weaker";
    case StrengthVerdict::incomparable: return "incomparable";
    case StrengthVerdict::constant_strength: return "constant-strength";
    case StrengthVerdict::not_constant_strength: return "not-constant-strength";
  }
  return "?";
}

HypoReport check_hypoelliptic(const SymbolPolynomial& q, double d, const RayConfig& cfg) {
  check_symbol(q, cfg);
  if (!(d >= 1.0) || !std::isfinite(d)) throw InvalidArgument("exponent d must be a finite number >= 1");

  const DerivativeTable table(q);
  const auto principal = q.principal_part();
  const auto dirs = ray_directions(q.dimension(), cfg, &principal);
  const auto radii = cfg.radius_grid();
  const auto& entries = table.entries();

  HypoReport rep;
  rep.d_estimate = d;
  rep.rays = static_cast<int>(dirs.size());
  for (std::size_t e = 1; e < entries.size(); ++e)
    rep.per_beta.push_back({entries[e].first, std::numeric_limits<double>::infinity(),
                            -std::numeric_limits<double>::infinity(), 0, 0.0});

  std::optional<RayWitness> worst_violation;
  std::optional<RayWitness> argmax;
  bool unstable = false;
  int flat_rays = 0;

  for (const auto& theta : dirs) {
    const auto s = sample_ray(table, theta, radii);
    bool flat = false;
    for (std::size_t e = 0; e < entries.size(); ++e) {
      const int order = entries[e].first.order();
      std::vector<double> ratio(radii.size());
      for (std::size_t j = 0; j < radii.size(); ++j) {
        ratio[j] = std::pow(radii[j], order / d) * s.deriv_abs[e][j] / (1.0 + s.q_abs[j]);
        if (!argmax || ratio[j] > argmax->ratio)
          argmax = RayWitness{entries[e].first, theta, radii[j], ratio[j], 0.0};
      }
      if (e == 0) continue;
      const auto fit = tail_fit(radii, ratio);
      if (!fit.valid) continue;
      auto& bs = rep.per_beta[e - 1];
      bs.min_slope = std::min(bs.min_slope, fit.slope);
      bs.max_slope = std::max(bs.max_slope, fit.slope);
      ++bs.rays;
      if (std::abs(fit.slope) <= cfg.slope_tolerance) flat = true;
      if (fit.slope > cfg.slope_tolerance) {
        if (increasing_tail(fit.tail_values, kMonotoneWindow)) {
          if (!worst_violation || ratio.back() > worst_violation->ratio)
            worst_violation = RayWitness{entries[e].first, theta, radii.back(), ratio.back(), fit.slope};
        } else {
          unstable = true;
        }
      }
    }
    flat_rays += flat;
  }
  for (auto& bs : rep.per_beta)
    if (bs.rays == 0) bs.min_slope = bs.max_slope = 0.0;

  rep.flat_fraction = dirs.empty() ? 0.0 : static_cast<double>(flat_rays) / dirs.size();
  rep.fitted_c = argmax ? argmax->ratio : 0.0;
  if (worst_violation) {
    rep.verdict = HypoVerdict::violated;
    rep.witness = worst_violation;
  } else if (unstable) {
    rep.verdict = HypoVerdict::inconclusive;
    rep.witness = argmax;
  } else {
    rep.verdict = HypoVerdict::consistent;
    rep.witness = argmax;
  }
  return rep;
}

HypoReport estimate_d(const SymbolPolynomial& q, const RayConfig& cfg) {
  check_symbol(q, cfg);
  if (q.order() < 1) throw InvalidArgument("estimate_d needs a symbol of order >= 1");

  const DerivativeTable table(q);
  const auto principal = q.principal_part();
  const auto dirs = ray_directions(q.dimension(), cfg, &principal);
  const auto radii = cfg.radius_grid();
  const auto& entries = table.entries();

  HypoReport rep;
  rep.rays = static_cast<int>(dirs.size());
  for (std::size_t e = 1; e < entries.size(); ++e)
    rep.per_beta.push_back({entries[e].first, std::numeric_limits<double>::infinity(),
                            -std::numeric_limits<double>::infinity(), 0, 0.0});

  std::optional<RayWitness> worst_violation;
  int flat_rays = 0;
  double d_max = 0.0;

  for (const auto& theta : dirs) {
    const auto s = sample_ray(table, theta, radii);
    bool flat = false;
    for (std::size_t e = 1; e < entries.size(); ++e) {
      const int order = entries[e].first.order();
      std::vector<double> ratio(radii.size());
      for (std::size_t j = 0; j < radii.size(); ++j) ratio[j] = s.deriv_abs[e][j] / (1.0 + s.q_abs[j]);
      const auto fit = tail_fit(radii, ratio);
      if (!fit.valid) continue;
      auto& bs = rep.per_beta[e - 1];
      bs.min_slope = std::min(bs.min_slope, fit.slope);
      bs.max_slope = std::max(bs.max_slope, fit.slope);
      ++bs.rays;

      if (fit.slope >= -cfg.slope_tolerance) {
        // Not decaying: violated when |xi|^eps * ratio diverges for every test eps.
        bool diverges_all = true;
        for (double eps : kEpsilonTests) {
          std::vector<double> weighted(radii.size());
          for (std::size_t j = 0; j < radii.size(); ++j) weighted[j] = std::pow(radii[j], eps) * ratio[j];
          const auto wf = tail_fit(radii, weighted);
          diverges_all = diverges_all && wf.valid && wf.slope > 0.0 &&
                         increasing_tail(wf.tail_values, kMonotoneWindow);
        }
        if (diverges_all) {
          if (!worst_violation || fit.slope > worst_violation->slope)
            worst_violation = RayWitness{entries[e].first, theta, radii.back(), ratio.back(), fit.slope};
        } else {
          flat = true;
        }
      } else {
        const double cand = -static_cast<double>(order) / fit.slope;
        bs.d_candidate = std::max(bs.d_candidate, cand);
        d_max = std::max(d_max, cand);
      }
    }
    flat_rays += flat;
  }
  for (auto& bs : rep.per_beta)
    if (bs.rays == 0) bs.min_slope = bs.max_slope = 0.0;
  rep.flat_fraction = dirs.empty() ? 0.0 : static_cast<double>(flat_rays) / dirs.size();

  if (worst_violation) {
    rep.verdict = HypoVerdict::violated;
    rep.witness = worst_violation;
    return rep;
  }
  if (rep.flat_fraction > kFlatShareLimit) {
    rep.verdict = HypoVerdict::inconclusive;
    return rep;
  }
  rep.verdict = HypoVerdict::consistent;
  const double d_hat = std::max(1.0, d_max);
  rep.d_estimate = d_hat;
  rep.d_rational = snap_rational(d_hat);
  const double d_used = rep.d_rational
                            ? static_cast<double>(rep.d_rational->first) / rep.d_rational->second
                            : d_hat;
  // Constant of the weighted inequality at the chosen exponent.
  const auto check = check_hypoelliptic(q, std::max(1.0, d_used), cfg);
  rep.fitted_c = check.fitted_c;
  rep.witness = check.witness;
  return rep;
}

namespace {

struct RatioSweep {
  double min = std::numeric_limits<double>::infinity();
  double max = 0.0;
  // Most divergent ray for t and for 1/t.
  std::optional<StrengthWitness> up;
  std::optional<StrengthWitness> down;
  bool all_flat = true;
};

RatioSweep sweep_ratio(const DerivativeTable& p, const DerivativeTable& q,
                       const std::vector<std::vector<double>>& dirs, const std::vector<double>& radii,
                       double tol) {
  RatioSweep sw;
  std::vector<double> xi;
  for (const auto& theta : dirs) {
    xi.resize(theta.size());
    std::vector<double> t(radii.size());
    for (std::size_t j = 0; j < radii.size(); ++j) {
      for (std::size_t k = 0; k < xi.size(); ++k) xi[k] = radii[j] * theta[k];
      t[j] = p.p_tilde(xi) / q.p_tilde(xi);
      sw.min = std::min(sw.min, t[j]);
      sw.max = std::max(sw.max, t[j]);
    }
    const auto fit = tail_fit(radii, t);
    if (!fit.valid) continue;
    if (fit.slope > tol) {
      sw.all_flat = false;
      if (!sw.up || fit.slope > sw.up->slope)
        sw.up = StrengthWitness{theta, radii.back(), t.back(), fit.slope, std::nullopt, "P~/Q~ diverges"};
    } else if (fit.slope < -tol) {
      sw.all_flat = false;
      if (!sw.down || -fit.slope > sw.down->slope)
        sw.down = StrengthWitness{theta, radii.back(), t.back(), -fit.slope, std::nullopt, "Q~/P~ diverges"};
    }
  }
  return sw;
}

}  // namespace

StrengthReport equally_strong(const SymbolPolynomial& p, const SymbolPolynomial& q,
                              const RayConfig& cfg) {
  if (p.dimension() != q.dimension()) throw DimensionMismatch("symbols differ in dimension");
  if (p.is_zero() || q.is_zero()) throw InvalidArgument("equally_strong: zero symbol");
  cfg.validate(p.dimension());

  const DerivativeTable tp(p), tq(q);
  auto dirs = ray_directions(p.dimension(), cfg, nullptr);
  // Characteristic refinements of both principal parts.
  if (cfg.characteristic_search) {
    for (const auto* s : {&p, &q}) {
      const auto pp = s->principal_part();
      for (auto& d : ray_directions(p.dimension(), cfg, &pp)) add_unique(dirs, d, 1e-6);
    }
  }
  const auto radii = cfg.radius_grid();
  const auto sw = sweep_ratio(tp, tq, dirs, radii, cfg.slope_tolerance);

  StrengthReport rep;
  rep.seed = cfg.seed;
  rep.ratio_min = sw.min;
  rep.ratio_max = sw.max;
  if (!sw.up && !sw.down) {
    rep.verdict = StrengthVerdict::equally_strong;
  } else if (sw.up && sw.down) {
    rep.verdict = StrengthVerdict::incomparable;
    rep.witness = sw.up->slope >= sw.down->slope ? sw.up : sw.down;
  } else if (sw.down) {
    // P~/Q~ bounded, Q~/P~ divergent.
    rep.verdict = StrengthVerdict::p_weaker;
    rep.witness = sw.down;
  } else {
    rep.verdict = StrengthVerdict::q_weaker;
    rep.witness = sw.up;
  }
  return rep;
}

std::vector<std::vector<double>> constant_strength_points(const BoxDomain& box, int points) {
  if (points < 2) throw InvalidArgument("constant strength needs points >= 2");
  const std::size_t n = box.dimension();
  std::vector<std::vector<double>> out;
  std::size_t total = 1;
  for (std::size_t j = 0; j < n; ++j) total *= static_cast<std::size_t>(points);
  for (std::size_t code = 0; code < total; ++code) {
    std::vector<double> x(n);
    std::size_t c = code;
    for (std::size_t j = 0; j < n; ++j) {
      const auto i = static_cast<double>(c % static_cast<std::size_t>(points));
      c /= static_cast<std::size_t>(points);
      x[j] = box.lo()[j] + box.side(j) * (i + 0.5) / points;
    }
    out.push_back(std::move(x));
  }
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    std::vector<double> x(n);
    for (std::size_t j = 0; j < n; ++j) {
      const double inset = 1e-3 * box.side(j);
      x[j] = (mask >> j) & 1u ? box.hi()[j] - inset : box.lo()[j] + inset;
    }
    out.push_back(std::move(x));
  }
  return out;
}

StrengthReport check_constant_strength(const VariableOperator& p, const RayConfig& cfg, int points) {
  cfg.validate(p.dimension());
  StrengthReport rep;
  rep.seed = cfg.seed;
  rep.points = constant_strength_points(p.domain(), points);

  const auto center = p.domain().center();
  const auto p0 = freeze(p, center);
  if (p0.is_zero()) {
    rep.verdict = StrengthVerdict::not_constant_strength;
    rep.witness = StrengthWitness{{}, 0.0, 0.0, 0.0, center, "frozen symbol vanishes identically"};
    return rep;
  }

  rep.ratio_min = std::numeric_limits<double>::infinity();
  rep.ratio_max = 0.0;
  std::optional<StrengthWitness> worst;
  for (const auto& x : rep.points) {
    const auto px = freeze(p, x);
    if (px.is_zero()) {
      rep.verdict = StrengthVerdict::not_constant_strength;
      rep.witness = StrengthWitness{{}, 0.0, 0.0, 0.0, x, "frozen symbol vanishes identically"};
      return rep;
    }
    const auto pair = equally_strong(px, p0, cfg);
    rep.ratio_min = std::min(rep.ratio_min, pair.ratio_min);
    rep.ratio_max = std::max(rep.ratio_max, pair.ratio_max);
    if (pair.verdict != StrengthVerdict::equally_strong && pair.witness) {
      if (!worst || pair.witness->slope > worst->slope) {
        worst = pair.witness;
        worst->x = x;
        worst->note = "P(x,.) vs P(center,.): " + to_string(pair.verdict);
      }
    }
  }
  if (worst) {
    rep.verdict = StrengthVerdict::not_constant_strength;
    rep.witness = worst;
  } else {
    rep.verdict = StrengthVerdict::constant_strength;
  }
  return rep;
}

// ------------------------------------------------------------------- json

using nlohmann::json;

json to_json(const RayConfig& cfg) {
  return {{"directions", cfg.directions},
          {"r0", cfg.r0},
          {"rho", cfg.rho},
          {"radii", cfg.radii},
          {"characteristic_search", cfg.characteristic_search},
          {"slope_tolerance", cfg.slope_tolerance},
          {"seed", cfg.seed}};
}

RayConfig ray_config_from_json(const json& doc) {
  RayConfig cfg;
  if (!doc.is_object()) return cfg;
  try {
    cfg.directions = doc.value("directions", cfg.directions);
    cfg.r0 = doc.value("r0", cfg.r0);
    cfg.rho = doc.value("rho", cfg.rho);
    cfg.radii = doc.value("radii", cfg.radii);
    cfg.characteristic_search = doc.value("characteristic_search", cfg.characteristic_search);
    cfg.slope_tolerance = doc.value("slope_tolerance", cfg.slope_tolerance);
    cfg.seed = doc.value("seed", cfg.seed);
  } catch (const json::exception& e) {
    throw ParseError(std::string("ray config: ") + e.what());
  }
  return cfg;
}

namespace {

json witness_json(const RayWitness& w) {
  return {{"beta", w.beta.exponents()}, {"direction", w.direction}, {"radius", w.radius},
          {"ratio", w.ratio}, {"slope", w.slope}};
}

json witness_json(const StrengthWitness& w) {
  json j = {{"direction", w.direction}, {"radius", w.radius}, {"ratio", w.ratio},
            {"slope", w.slope}, {"note", w.note}};
  if (w.x) j["x"] = *w.x;
  return j;
}

}  // namespace

json to_json(const HypoReport& r) {
  json j;
  j["verdict"] = to_string(r.verdict);
  j["d_estimate"] = r.d_estimate ? json(*r.d_estimate) : json(nullptr);
  j["d_rational"] = r.d_rational ? json{{"mu", r.d_rational->first}, {"nu", r.d_rational->second}}
                                 : json(nullptr);
  j["fitted_c"] = r.fitted_c;
  j["rays"] = r.rays;
  j["flat_fraction"] = r.flat_fraction;
  j["witness"] = r.witness ? witness_json(*r.witness) : json(nullptr);
  json slopes = json::array();
  for (const auto& b : r.per_beta)
    slopes.push_back({{"beta", b.beta.exponents()}, {"min_slope", b.min_slope},
                      {"max_slope", b.max_slope}, {"rays", b.rays}, {"d_candidate", b.d_candidate}});
  j["per_beta_slopes"] = std::move(slopes);
  return j;
}

json to_json(const StrengthReport& r) {
  json j;
  j["verdict"] = to_string(r.verdict);
  j["ratio_bounds"] = {r.ratio_min, r.ratio_max};
  j["witness"] = r.witness ? witness_json(*r.witness) : json(nullptr);
  j["seed"] = r.seed;
  if (!r.points.empty()) j["points"] = r.points;
  return j;
}

}  // namespace roumieu
