#include "roumieu/weights.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "roumieu/error.hpp"

namespace roumieu {

namespace {

constexpr double kResidualTarget = 1e-9;
constexpr double kGrowthSlack = 0.05;

double norm2(std::span<const double> v) {
  double s = 0.0;
  for (double c : v) s += c * c;
  return std::sqrt(s);
}

std::vector<double> add(std::span<const double> a, std::span<const double> b) {
  std::vector<double> r(a.begin(), a.end());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}

std::vector<double> random_direction(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  std::vector<double> v(n);
  double s = 0.0;
  do {
    for (double& c : v) c = gauss(rng);
    s = norm2(v);
  } while (s == 0.0);
  for (double& c : v) c /= s;
  return v;
}

std::vector<double> scaled(std::vector<double> v, double r) {
  for (double& c : v) c *= r;
  return v;
}

}  // namespace

// ------------------------------------------------------------ WeightFunction

WeightFunction WeightFunction::constant(std::size_t n, double c) {
  if (!(c > 0.0) || !std::isfinite(c)) throw InvalidArgument("constant weight must be positive");
  WeightFunction w;
  w.form_ = Form::constant;
  w.n_ = n;
  w.c_ = c;
  return w;
}

WeightFunction WeightFunction::one_plus_norm(std::size_t n) {
  WeightFunction w;
  w.form_ = Form::one_plus_norm;
  w.n_ = n;
  return w;
}

WeightFunction WeightFunction::p_tilde_of(const SymbolPolynomial& q) {
  if (q.is_zero()) throw InvalidArgument("strength weight of the zero symbol vanishes");
  WeightFunction w;
  w.form_ = Form::p_tilde;
  w.n_ = q.dimension();
  w.table_ = std::make_shared<const DerivativeTable>(q);
  return w;
}

WeightFunction WeightFunction::power_of(const WeightFunction& base, int j) {
  if (j < 1) throw InvalidArgument("weight power must be a positive integer");
  WeightFunction w;
  w.form_ = Form::power_of;
  w.n_ = base.n_;
  w.base_ = std::make_shared<const WeightFunction>(base);
  w.j_ = j;
  return w;
}

int WeightFunction::degree() const noexcept {
  switch (form_) {
    case Form::constant: return 0;
    case Form::one_plus_norm: return 1;
    case Form::p_tilde: return table_->symbol().order();
    case Form::power_of: return j_ * base_->degree();
  }
  return 0;
}

double WeightFunction::operator()(std::span<const double> xi) const {
  if (xi.size() != n_) throw DimensionMismatch("weight evaluated at a point of wrong dimension");
  switch (form_) {
    case Form::constant: return c_;
    case Form::one_plus_norm: return 1.0 + norm2(xi);
    case Form::p_tilde: return table_->p_tilde(xi);
    case Form::power_of: return std::pow((*base_)(xi), j_);
  }
  return 0.0;
}

std::string WeightFunction::describe() const {
  std::ostringstream os;
  switch (form_) {
    case Form::constant: os << "constant(" << c_ << ")"; break;
    case Form::one_plus_norm: os << "1+|xi|"; break;
    case Form::p_tilde: os << "P~[" << to_string(table_->symbol()) << "]"; break;
    case Form::power_of: os << "(" << base_->describe() << ")^" << j_; break;
  }
  return os.str();
}

// ------------------------------------------------------------- temperate fit

std::vector<std::pair<std::vector<double>, std::vector<double>>> temperate_pairs(
    std::size_t n, const TemperateSampleConfig& cfg) {
  if (!(cfg.xi_radius > 0.0) || !(cfg.eta_radius > 0.0) || cfg.pairs < 1)
    throw InvalidArgument("temperate sampling needs positive radii and pair count");
  std::vector<std::vector<double>> xis{std::vector<double>(n, 0.0)};
  for (double frac : {0.01, 0.1, 0.5, 1.0})
    for (std::size_t j = 0; j < n; ++j)
      for (double sgn : {1.0, -1.0}) {
        std::vector<double> x(n, 0.0);
        x[j] = sgn * frac * cfg.xi_radius;
        xis.push_back(std::move(x));
      }
  std::vector<std::vector<double>> etas;
  for (double frac : {0.001, 0.01, 0.1, 0.5, 1.0}) {
    for (std::size_t j = 0; j < n; ++j)
      for (double sgn : {1.0, -1.0}) {
        std::vector<double> e(n, 0.0);
        e[j] = sgn * frac * cfg.eta_radius;
        etas.push_back(std::move(e));
      }
    if (n > 1)
      for (double sgn : {1.0, -1.0})
        etas.push_back(std::vector<double>(n, sgn * frac * cfg.eta_radius / std::sqrt(double(n))));
  }
  std::vector<std::pair<std::vector<double>, std::vector<double>>> pairs;
  for (const auto& x : xis)
    for (const auto& e : etas) pairs.emplace_back(x, e);

  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  while (static_cast<int>(pairs.size()) < cfg.pairs) {
    const double u = unif(rng), v = unif(rng);
    auto x = scaled(random_direction(n, rng), cfg.xi_radius * u * u);
    auto e = scaled(random_direction(n, rng), cfg.eta_radius * v);
    pairs.emplace_back(std::move(x), std::move(e));
  }
  return pairs;
}

namespace {

// Polynomial growth order of h sampled between |xi| = R/2 and R.
double growth_order(const WeightFunction& h, const TemperateSampleConfig& cfg) {
  const std::size_t n = h.dimension();
  std::vector<std::vector<double>> dirs;
  for (std::size_t j = 0; j < n; ++j)
    for (double sgn : {1.0, -1.0}) {
      std::vector<double> e(n, 0.0);
      e[j] = sgn;
      dirs.push_back(std::move(e));
    }
  std::mt19937_64 rng(cfg.seed ^ 0x9e3779b97f4a7c15ULL);
  for (int k = 0; k < 32; ++k) dirs.push_back(random_direction(n, rng));
  double g = 0.0;
  for (const auto& d : dirs) {
    const double outer = h(scaled(d, cfg.xi_radius));
    const double inner = h(scaled(d, 0.5 * cfg.xi_radius));
    g = std::max(g, std::log(outer / inner) / std::log(2.0));
  }
  return g;
}

}  // namespace

TemperateFit fit_temperate(const WeightFunction& h, const TemperateSampleConfig& cfg) {
  const auto pairs = temperate_pairs(h.dimension(), cfg);
  struct PairData {
    double log_ratio;
    double eta_norm;
    std::size_t index;
  };
  std::vector<PairData> data;
  data.reserve(pairs.size());
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto& [x, e] = pairs[i];
    const double hx = h(x), hxe = h(add(x, e));
    if (!(hx > 0.0) || !(hxe > 0.0)) throw InvalidArgument("weight is not positive on the samples");
    data.push_back({std::log(hxe) - std::log(hx), norm2(e), i});
  }

  TemperateFit fit;
  fit.growth_order = growth_order(h, cfg);
  const int steps = 4 * h.degree();
  std::size_t worst = 0;
  for (int k = 0; k <= steps; ++k) {
    const double n_exp = 0.5 * k;
    if (n_exp < fit.growth_order - kGrowthSlack) continue;
    double c = 0.0;
    bool feasible = true;
    for (const auto& p : data) {
      if (p.log_ratio <= kResidualTarget) continue;
      if (n_exp == 0.0 || p.eta_norm == 0.0) {
        feasible = false;
        worst = p.index;
        break;
      }
      const double need = std::expm1(p.log_ratio / n_exp) / p.eta_norm;
      if (need > c) {
        c = need;
        worst = p.index;
      }
    }
    if (!feasible) continue;
    auto residual_for = [&](double cc) {
      double r = -std::numeric_limits<double>::infinity();
      for (const auto& p : data) r = std::max(r, p.log_ratio - n_exp * std::log1p(cc * p.eta_norm));
      return r;
    };
    double residual = residual_for(c);
    for (int bump = 0; bump < 60 && residual > kResidualTarget; ++bump) {
      c *= 1.0 + 1e-12 * std::pow(2.0, bump);
      residual = residual_for(c);
    }
    if (residual > kResidualTarget) continue;
    fit.success = true;
    fit.n = n_exp;
    fit.c = c;
    fit.residual = residual;
    fit.worst_xi = pairs[worst].first;
    fit.worst_eta = pairs[worst].second;
    return fit;
  }
  fit.success = false;
  fit.worst_xi = pairs[worst].first;
  fit.worst_eta = pairs[worst].second;
  fit.residual = data[worst].log_ratio;
  return fit;
}

// ------------------------------------------------------------ ball supremum

std::vector<std::vector<double>> ball_offsets(std::size_t n, double delta, const BallConfig& cfg) {
  if (!(delta > 0.0)) throw InvalidArgument("ball radius delta must be positive");
  std::vector<std::vector<double>> out{std::vector<double>(n, 0.0)};
  for (std::size_t j = 0; j < n; ++j)
    for (double sgn : {1.0, -1.0}) {
      std::vector<double> e(n, 0.0);
      e[j] = sgn * delta;
      out.push_back(std::move(e));
    }
  const int remaining = std::max(0, cfg.samples - static_cast<int>(out.size()));
  if (n == 1) {
    for (int k = 0; k < remaining; ++k)
      out.push_back({delta * (-1.0 + 2.0 * (k + 0.5) / remaining)});
    return out;
  }
  const int on_sphere = remaining / 2;
  const int inside = remaining - on_sphere;
  if (n == 2) {
    for (int k = 0; k < on_sphere; ++k) {
      const double t = 2.0 * std::numbers::pi * (k + 0.5) / on_sphere;
      out.push_back({delta * std::cos(t), delta * std::sin(t)});
    }
    const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
    for (int k = 0; k < inside; ++k) {
      const double r = delta * std::sqrt((k + 0.5) / inside);
      out.push_back({r * std::cos(golden * k), r * std::sin(golden * k)});
    }
    return out;
  }
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int k = 0; k < on_sphere; ++k) out.push_back(scaled(random_direction(n, rng), delta));
  for (int k = 0; k < inside; ++k) {
    auto d = random_direction(n, rng);
    out.push_back(scaled(std::move(d), delta * std::pow(unif(rng), 1.0 / static_cast<double>(n))));
  }
  return out;
}

double ball_max(const WeightFunction& h, std::span<const double> xi,
                const std::vector<std::vector<double>>& offsets) {
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& e : offsets) best = std::max(best, h(add(xi, e)));
  return best;
}

BallSup h_delta(const WeightFunction& h, double delta, std::span<const double> xi,
                const BallConfig& cfg) {
  if (xi.size() != h.dimension()) throw DimensionMismatch("h_delta point dimension differs");
  BallSup sup;
  sup.offsets = ball_offsets(h.dimension(), delta, cfg);
  sup.value = -std::numeric_limits<double>::infinity();
  for (const auto& e : sup.offsets) {
    const double v = h(add(xi, e));
    if (v > sup.value) {
      sup.value = v;
      sup.argmax = e;
    }
  }
  if (h.form() == WeightFunction::Form::constant) return sup;

  // Coordinate ascent inside the closed ball with a shrinking step.
  double step = delta / 8.0;
  for (int it = 0; it < cfg.ascent_steps; ++it) {
    bool improved = false;
    for (std::size_t j = 0; j < h.dimension(); ++j) {
      for (double sgn : {1.0, -1.0}) {
        auto e = sup.argmax;
        e[j] += sgn * step;
        const double r = norm2(e);
        if (r > delta)
          for (double& c : e) c *= delta / r;
        sup.offsets.push_back(e);
        const double v = h(add(xi, e));
        if (v > sup.value) {
          sup.value = v;
          sup.argmax = std::move(e);
          improved = true;
        }
      }
    }
    if (!improved) step *= 0.5;
  }
  return sup;
}

// ---------------------------------------------------------------- sandwich check

std::vector<std::vector<double>> lemma_points(std::size_t n, const TemperateSampleConfig& cfg) {
  std::vector<std::vector<double>> pts{std::vector<double>(n, 0.0)};
  for (double r : {0.5, 2.0, 10.0})
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<double> x(n, 0.0);
      x[j] = r;
      pts.push_back(x);
      x[j] = -r;
      pts.push_back(std::move(x));
    }
  std::mt19937_64 rng(cfg.seed + 1);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  while (static_cast<int>(pts.size()) < cfg.check_points) {
    const double u = unif(rng);
    pts.push_back(scaled(random_direction(n, rng), 0.5 * cfg.xi_radius * u * u));
  }
  return pts;
}

Lemma1Report verify_lemma1(const WeightFunction& h, double delta, int j,
                           const TemperateSampleConfig& cfg,
                           std::optional<std::pair<double, double>> constants,
                           const BallConfig& ball) {
  if (!(delta > 0.0)) throw InvalidArgument("delta must be positive");
  if (j < 1) throw InvalidArgument("power j must be >= 1");
  Lemma1Report rep;
  if (constants) {
    rep.c = constants->first;
    rep.n = constants->second;
  } else {
    const auto fit = fit_temperate(h, cfg);
    if (!fit.success) throw PreconditionFailed("temperate-fit", "no (C, N) on the search grid fits " + h.describe());
    rep.c = fit.c;
    rep.n = fit.n;
  }
  rep.delta = delta;
  rep.j = j;
  const auto hj = WeightFunction::power_of(h, j);
  const double growth = std::pow(1.0 + rep.c * delta, rep.n);

  rep.lower_margin = std::numeric_limits<double>::infinity();
  rep.upper_margin = std::numeric_limits<double>::infinity();
  rep.power_residual = 0.0;
  const auto pts = lemma_points(h.dimension(), cfg);
  rep.points = static_cast<int>(pts.size());
  for (const auto& xi : pts) {
    const double hx = h(xi);
    const auto sup = h_delta(h, delta, xi, ball);
    const double lower = (sup.value - hx) / hx;
    const double upper = (hx * growth - sup.value) / sup.value;
    if (upper < rep.upper_margin) rep.worst_xi = xi;
    rep.lower_margin = std::min(rep.lower_margin, lower);
    rep.upper_margin = std::min(rep.upper_margin, upper);

    // Both sides of the power identity over the same offsets.
    const double power_of_sup = std::pow(ball_max(h, xi, sup.offsets), j);
    const double sup_of_power = ball_max(hj, xi, sup.offsets);
    rep.power_residual = std::max(rep.power_residual, std::abs(sup_of_power - power_of_sup) / power_of_sup);
  }
  rep.sandwich_pass = rep.lower_margin >= 0.0 && rep.upper_margin >= -kLemmaTolerance;
  rep.power_pass = rep.power_residual <= kLemmaTolerance;
  return rep;
}

using nlohmann::json;

json to_json(const TemperateFit& f) {
  return {{"success", f.success}, {"C", f.c}, {"N", f.n}, {"residual", f.residual},
          {"growth_order", f.growth_order}, {"worst_xi", f.worst_xi}, {"worst_eta", f.worst_eta}};
}

json to_json(const Lemma1Report& r) {
  return {{"C", r.c},
          {"N", r.n},
          {"delta", r.delta},
          {"j", r.j},
          {"points", r.points},
          {"lower_margin", r.lower_margin},
          {"upper_margin", r.upper_margin},
          {"power_residual", r.power_residual},
          {"sandwich_pass", r.sandwich_pass},
          {"power_pass", r.power_pass},
          {"worst_xi", r.worst_xi}};
}

}  // namespace roumieu
