#include "roumieu/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "roumieu/error.hpp"
#include "roumieu/regression.hpp"

namespace roumieu {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double safe_log(double v) { return v > 0.0 ? std::log(v) : -kInf; }

bool exponent_consistent(const HypoReport& rep, double d) {
  if (rep.verdict == HypoVerdict::violated) return false;
  if (rep.d_rational) {
    const double snapped = static_cast<double>(rep.d_rational->first) / static_cast<double>(rep.d_rational->second);
    if (std::abs(snapped - d) <= 1e-12 * d) return true;
  }
  return rep.d_estimate && std::abs(*rep.d_estimate - d) <= 0.1 * d;
}

void require_exponent(const SymbolPolynomial& q, const RationalExponent& d, const RayConfig& rays,
                      std::optional<double>* estimate = nullptr) {
  const auto rep = estimate_d(q, rays);
  if (estimate) *estimate = rep.d_estimate;
  if (!exponent_consistent(rep, d.value())) {
    std::string got = rep.d_estimate ? std::to_string(*rep.d_estimate) : "none";
    throw PreconditionFailed("hypoelliptic-exponent", "estimated d = " + got + " (verdict " +
                                                          to_string(rep.verdict) + ") is not within 10% of " +
                                                          d.describe());
  }
}

// |R| <= C (1 + |Q|) along every ray of the analysis grid.
void require_domination(const SymbolPolynomial& q, const SymbolPolynomial& r, const RayConfig& rays) {
  rays.validate(q.dimension());
  const auto principal = q.principal_part();
  const auto dirs = ray_directions(q.dimension(), rays, &principal);
  const auto radii = rays.radius_grid();
  const std::size_t first = radii.size() / 2;
  std::vector<double> xi(q.dimension());
  for (const auto& theta : dirs) {
    std::vector<double> lr;
    std::vector<double> lv;
    for (std::size_t i = first; i < radii.size(); ++i) {
      for (std::size_t j = 0; j < xi.size(); ++j) xi[j] = radii[i] * theta[j];
      const double num = std::abs(eval(r, xi));
      if (num <= 64 * std::numeric_limits<double>::epsilon() * eval_abs(r, xi)) continue;
      lr.push_back(std::log(radii[i]));
      lv.push_back(std::log(num / (1.0 + std::abs(eval(q, xi)))));
    }
    if (lv.size() < 3) continue;
    const double slope = least_squares_slope(lr, lv);
    if (slope > rays.slope_tolerance && increasing_tail(lv, std::min<std::size_t>(5, lv.size()))) {
      for (std::size_t j = 0; j < xi.size(); ++j) xi[j] = radii.back() * theta[j];
      std::string w = "[";
      for (std::size_t j = 0; j < xi.size(); ++j) w += (j ? ", " : "") + std::to_string(xi[j]);
      throw PreconditionFailed("symbol-domination",
                               "|R(xi)| / (1 + |Q(xi)|) grows with slope " + std::to_string(slope) +
                                   " along the ray through xi = " + w + "]");
    }
  }
}

double binom(int k, int i) { return std::exp(log_binomial(k, i)); }

}  // namespace

RationalExponent::RationalExponent(std::int64_t mu, std::int64_t nu) {
  if (mu <= 0 || nu <= 0) throw InvalidArgument("exponent mu/nu needs positive integers");
  const auto g = std::gcd(mu, nu);
  mu_ = mu / g;
  nu_ = nu / g;
  if (mu_ < nu_) throw InvalidArgument("exponent d = " + describe() + " must be >= 1");
}

std::vector<FixtureSample> sample_fixtures(const std::vector<Fixture>& fixtures, const GridSpec& grid) {
  std::vector<FixtureSample> out;
  out.reserve(fixtures.size());
  for (const auto& f : fixtures) out.push_back({f.id(), sample(f, grid)});
  return out;
}

EstimateReport finalize_estimate(std::string check, std::vector<EstimateCase> cases) {
  EstimateReport rep;
  rep.check = std::move(check);
  double c = 0.0;
  double best_ratio = -1.0;
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const auto& e = cases[i];
    if (e.flagged) {
      rep.flagged_cases.push_back(i);
      continue;
    }
    if (e.power == 0 || e.lhs <= 0.0) continue;
    const double ratio = e.rhs_core > 0.0 ? std::pow(e.lhs / e.rhs_core, 1.0 / e.power) : kInf;
    if (ratio > best_ratio) {
      best_ratio = ratio;
      rep.witness = i;
    }
    c = std::max(c, ratio);
  }
  rep.fitted_constant = c;
  bool ok = std::isfinite(c);
  std::optional<std::size_t> failing;
  for (std::size_t i = 0; i < cases.size(); ++i) {
    auto& e = cases[i];
    if (e.power == 0)
      e.rhs = e.rhs_core;
    else if (e.rhs_core == 0.0)
      e.rhs = 0.0;
    else
      e.rhs = std::pow(c, e.power) * e.rhs_core;
    e.margin = e.rhs - e.lhs;
    if (!e.flagged && !(e.margin >= -kMarginTolerance * std::abs(e.rhs))) {
      ok = false;
      if (!failing) failing = i;
    }
  }
  if (failing) rep.witness = failing;
  rep.pass = ok;
  rep.cases = std::move(cases);
  return rep;
}

EstimateReport verify_p1(const SymbolPolynomial& q, const SymbolPolynomial& r, const RationalExponent& d,
                         const std::vector<FixtureSample>& fixtures, const BoxDomain& omega, double t,
                         const P1Options& options) {
  if (q.dimension() != r.dimension() || q.dimension() != omega.dimension())
    throw DimensionMismatch("verify_p1: symbol and region dimensions differ");
  if (!(t > 0.0)) throw InvalidArgument("verify_p1: t must be positive");
  if (options.normalize_diameter && !(omega.diameter() < 1.0))
    throw PreconditionFailed("diameter-normalization",
                             "diameter of omega is " + std::to_string(omega.diameter()) + ", not < 1");
  require_domination(q, r, options.rays);
  const double mu = d.value() * q.order();
  std::vector<EstimateCase> cases;
  for (const auto& fx : fixtures) {
    const auto ru = apply_operator(r, fx.u);
    const auto qu = apply_operator(q, fx.u);
    EstimateCase c;
    c.fixture = fx.id;
    c.parameters = {{"mu", mu}, {"t", t}};
    c.lhs = shrink_norm(ru.value, omega, mu, t);
    c.rhs_core = shrink_norm(qu.value, omega, mu, t) + restricted_l2(fx.u, omega, 0.0);
    c.power = 1;
    c.flagged = !ru.resolved() || !qu.resolved();
    cases.push_back(std::move(c));
  }
  return finalize_estimate("p1", std::move(cases));
}

Prop31Report verify_prop31(const SymbolPolynomial& q, const RationalExponent& d,
                           const std::vector<FixtureSample>& fixtures, const BoxDomain& omega, int kmax,
                           const std::vector<double>& deltas, const RayConfig& rays) {
  if (kmax < 0) throw InvalidArgument("verify_prop31: kmax must be >= 0");
  if (deltas.empty()) throw InvalidArgument("verify_prop31: empty delta set");
  for (double dl : deltas)
    if (!(dl > 0.0)) throw InvalidArgument("verify_prop31: deltas must be positive");
  if (q.dimension() != omega.dimension()) throw DimensionMismatch("verify_prop31: dimensions differ");
  const int m = q.order();
  const auto mu = static_cast<int>(d.mu());
  const auto nu = static_cast<int>(d.nu());
  const int max_alpha = kmax * m * nu;
  Prop31Report out;
  require_exponent(q, d, rays, &out.d_estimate);
  for (const auto& fx : fixtures) {
    if (2 * max_alpha > fx.u.spec().resolution)
      throw PreconditionFailed("spectral-resolution", "derivative order " + std::to_string(max_alpha) +
                                                          " exceeds half the grid resolution " +
                                                          std::to_string(fx.u.spec().resolution));
  }

  const double dm = d.value() * m;
  const double gamma = d.gamma(m);
  std::vector<EstimateCase> statement;
  std::vector<EstimateCase> proof;
  for (const auto& fx : fixtures) {
    const auto qn = iterate_norms(q, fx.u, mu * kmax, omega, 0.0);
    const auto alphas = multi_indices_up_to(q.dimension(), max_alpha);
    for (const auto& alpha : alphas) {
      const auto da = apply_operator(SymbolPolynomial::monomial(alpha), fx.u);
      std::vector<double> lhs;
      for (double dl : deltas) lhs.push_back(restricted_l2(da.value, omega, dl));
      for (int k = 0; k <= kmax; ++k) {
        if (alpha.order() > k * m * nu) continue;
        for (std::size_t di = 0; di < deltas.size(); ++di) {
          const double dl = deltas[di];
          const double base = static_cast<double>(k) / dl;
          double s_stmt = 0.0;
          double s_proof = 0.0;
          bool f_stmt = !da.resolved();
          bool f_proof = !da.resolved();
          for (int i = 0; i <= k; ++i) {
            const double b = binom(k, i);
            s_stmt += b * std::pow(base, (k - i) * dm) * qn.norms[i];
            s_proof += b * std::pow(base, (k - i) * gamma) * qn.norms[mu * i];
            f_stmt = f_stmt || qn.flagged[i];
            f_proof = f_proof || qn.flagged[mu * i];
          }
          nlohmann::json params = {{"k", k}, {"alpha", alpha.exponents()}, {"delta", dl}};
          statement.push_back({fx.id, params, lhs[di], s_stmt, k, 0.0, 0.0, f_stmt});
          proof.push_back({fx.id, params, lhs[di], s_proof, k, 0.0, 0.0, f_proof});
        }
      }
    }
  }
  out.statement = finalize_estimate("prop31-statement", std::move(statement));
  out.proof = finalize_estimate("prop31-proof", std::move(proof));
  out.pass = out.proof.pass;
  return out;
}

namespace {

GrowthFit fit_growth(NormSweep sweep, std::vector<double> log_targets) {
  GrowthFit fit;
  fit.labels = sweep.labels;
  fit.log_targets = log_targets;
  bool any_unflagged = false;
  double best = -kInf;
  std::vector<double> lx;
  std::vector<double> ly;
  for (std::size_t i = 0; i < sweep.labels.size(); ++i) {
    const int k = sweep.labels[i];
    const double r = (safe_log(sweep.norms[i]) - log_targets[i]) / (k + 1);
    fit.log_residuals.push_back(r);
    if (sweep.flagged[i]) continue;
    any_unflagged = true;
    if (!std::isfinite(r)) continue;
    lx.push_back(log_targets[i]);
    ly.push_back(std::log(sweep.norms[i]));
    if (r > best) {
      best = r;
      fit.argmax = k;
    }
  }
  if (!any_unflagged)
    throw PreconditionFailed("spectral-resolution", "every " + sweep.kind + " norm is unresolved on this grid");
  fit.constant = std::isfinite(best) ? std::exp(best) : 0.0;
  fit.slope = least_squares_slope(lx, ly);
  fit.sweep = std::move(sweep);
  return fit;
}

}  // namespace

GrowthFit fit_roumieu_vector(const GridFunction& u, const SymbolPolynomial& q, const RoumieuSequence& m,
                             const BoxDomain& region, double delta, int lmax) {
  if (lmax < 0) throw InvalidArgument("lmax must be >= 0");
  auto sweep = iterate_norms(q, u, lmax, region, delta);
  std::vector<double> targets;
  for (int l = 0; l <= lmax; ++l) targets.push_back(m.log_m(static_cast<std::int64_t>(l) * q.order()));
  return fit_growth(std::move(sweep), std::move(targets));
}

GrowthFit fit_roumieu_space(const GridFunction& u, const RoumieuSequence& m, double d, const BoxDomain& region,
                            double delta, int amax) {
  if (amax < 0) throw InvalidArgument("amax must be >= 0");
  if (!(d >= 1.0)) throw InvalidArgument("exponent d must be >= 1");
  if (2 * amax > u.spec().resolution)
    throw PreconditionFailed("spectral-resolution", "amax exceeds half the grid resolution");
  const auto md = power_sequence(m, d);
  auto sweep = derivative_norms(u, amax, region, delta);
  std::vector<double> targets;
  for (int a = 0; a <= amax; ++a) targets.push_back(md.log_m(a));
  return fit_growth(std::move(sweep), std::move(targets));
}

double residual_tail_slope(const GrowthFit& fit) {
  const std::size_t n = fit.labels.size();
  const std::size_t start = (2 * n) / 3;
  std::vector<double> x;
  std::vector<double> y;
  for (std::size_t i = start; i < n; ++i) {
    if (fit.sweep.flagged[i] || !std::isfinite(fit.log_residuals[i])) continue;
    x.push_back(fit.labels[i]);
    y.push_back(fit.log_residuals[i]);
  }
  return least_squares_slope(x, y);
}

Th1Report verify_th1(const GridFunction& u, const SymbolPolynomial& q, const RoumieuSequence& m,
                     const RationalExponent& d, const BoxDomain& region, double delta, int lmax, int amax,
                     const RayConfig& rays, std::int64_t pmax) {
  Th1Report rep;
  const auto basic = check_basic(m, pmax);
  rep.preconditions["sequence-conditions"] = to_json(basic);
  if (!basic.h1.pass || !basic.root_monotone.pass || !basic.h3_left.pass)
    throw PreconditionFailed("sequence-conditions", "M fails log-convexity, root monotonicity or the "
                                                    "binomial stability bound up to p = " +
                                                        std::to_string(pmax));
  const auto inclusion = fit_inclusion(power_sequence(RoumieuSequence::gevrey(1.0), d.value()), m, pmax);
  rep.preconditions["factorial-inclusion"] = to_json(inclusion);
  if (!inclusion.holds)
    throw PreconditionFailed("factorial-inclusion", "(p!)^" + d.describe() + " is not included in M_p: C L^p "
                                                    "diverges near p = " +
                                                        std::to_string(inclusion.witness_p.value_or(pmax)));
  std::optional<double> est;
  require_exponent(q, d, rays, &est);
  rep.preconditions["hypoelliptic-exponent"] = {{"d", d.describe()}, {"estimate", finite_or_null(est.value_or(kInf))}};

  rep.vector_fit = fit_roumieu_vector(u, q, m, region, delta, lmax);
  rep.space_fit = fit_roumieu_space(u, m, d.value(), region, delta, amax);
  rep.vector_tail_slope = residual_tail_slope(rep.vector_fit);
  rep.space_tail_slope = residual_tail_slope(rep.space_fit);

  // Constant chain on the sampled norms.
  const int order = q.order();
  const auto mu = d.mu();
  const auto nu = d.nu();
  const double gamma = d.gamma(order);
  const auto& vs = rep.vector_fit.sweep;
  auto log_q = [&](std::int64_t l) -> std::optional<double> {
    if (l > lmax || vs.flagged[l] || vs.norms[l] <= 0.0) return std::nullopt;
    return std::log(vs.norms[l]);
  };
  auto log_m = [&](std::int64_t p) -> std::optional<double> {
    if (p > m.max_index()) return std::nullopt;
    return m.log_m(p);
  };
  rep.a = rep.vector_fit.constant;
  double la1 = -kInf;
  double la2 = -kInf;
  for (std::int64_t k = 0; mu * (k + 1) <= lmax; ++k) {
    const auto mk1 = log_m((k + 1) * order * mu);
    const auto mk = log_m(k * order * mu);
    if (!mk1 || !mk) break;
    for (std::int64_t i = 0; i <= k + 1; ++i) {
      const auto nq = log_q(mu * i);
      const auto mi = log_m(i * order * mu);
      if (!nq || !mi) continue;
      const double power = static_cast<double>(k + 1 - i) * gamma;
      const double lk = (k == 0) ? (power == 0.0 ? 0.0 : -kInf) : power * std::log(static_cast<double>(k));
      const double lhs = lk + *nq;
      la1 = std::max(la1, (lhs - *mi - (*mk1) * static_cast<double>(k + 1 - i) / (k + 1)) / (k + 1));
      la2 = std::max(la2, (lhs - *mk) / (k + 1));
    }
  }
  double la3 = -kInf;
  const auto& ds = rep.space_fit.sweep;
  for (std::size_t a = 0; a < ds.labels.size(); ++a) {
    if (ds.flagged[a] || ds.norms[a] <= 0.0) continue;
    const std::int64_t k = (ds.labels[a] + nu * order - 1) / (nu * order);
    const auto mk = log_m(k * order * mu);
    if (!mk) continue;
    la3 = std::max(la3, (std::log(ds.norms[a]) - *mk) / (k + 1));
  }
  rep.a1 = std::isfinite(la1) ? std::exp(la1) : 0.0;
  rep.a2 = std::isfinite(la2) ? std::exp(la2) : 0.0;
  rep.a3 = std::isfinite(la3) ? std::exp(la3) : 0.0;

  rep.pass = std::isfinite(rep.vector_fit.constant) && std::isfinite(rep.space_fit.constant) &&
             rep.vector_tail_slope <= 0.0 && rep.space_tail_slope <= 0.0;
  return rep;
}

EstimateReport verify_domination(const VariableOperator& p, const std::vector<double>& x0,
                                 const std::vector<FixtureSample>& fixtures, int lmax, const BoxDomain& region,
                                 double delta, const RayConfig& rays) {
  if (lmax < 1) throw InvalidArgument("verify_domination: lmax must be >= 1");
  const auto strength = check_constant_strength(p, rays);
  if (strength.verdict != StrengthVerdict::constant_strength) {
    std::string where;
    if (strength.witness && strength.witness->x) {
      where = " near x = [";
      for (std::size_t j = 0; j < strength.witness->x->size(); ++j)
        where += (j ? ", " : "") + std::to_string((*strength.witness->x)[j]);
      where += "]";
    }
    throw PreconditionFailed("constant-strength", "frozen operators are not equally strong" + where);
  }
  const auto frozen = freeze(p, x0);
  std::vector<EstimateCase> cases;
  for (const auto& fx : fixtures) {
    const auto lhs = iterate_norms(frozen, fx.u, lmax, region, delta);
    // Constant coefficients: both sides through the same path, so A = 1 exactly.
    const auto rhs = p.is_constant_coefficient() ? lhs : iterate_norms(p, fx.u, lmax, region, delta);
    for (int l = 1; l <= lmax; ++l) {
      cases.push_back({fx.id, {{"l", l}}, lhs.norms[l], rhs.norms[l], l, 0.0, 0.0,
                       static_cast<bool>(lhs.flagged[l]) || static_cast<bool>(rhs.flagged[l])});
    }
  }
  return finalize_estimate("domination", std::move(cases));
}

nlohmann::json finite_or_null(double v) {
  if (std::isfinite(v)) return v;
  return nullptr;
}

nlohmann::json to_json(const EstimateCase& c) {
  return {{"fixture", c.fixture}, {"parameters", c.parameters}, {"lhs", finite_or_null(c.lhs)},
          {"rhs-core", finite_or_null(c.rhs_core)}, {"power", c.power}, {"rhs", finite_or_null(c.rhs)},
          {"margin", finite_or_null(c.margin)}, {"flagged", c.flagged}};
}

nlohmann::json to_json(const EstimateReport& r) {
  nlohmann::json cases = nlohmann::json::array();
  for (const auto& c : r.cases) cases.push_back(to_json(c));
  nlohmann::json j = {{"check", r.check},
                      {"fitted-constant", finite_or_null(r.fitted_constant)},
                      {"finite", std::isfinite(r.fitted_constant)},
                      {"flagged-cases", r.flagged_cases},
                      {"verdict", r.pass ? "pass" : "fail"},
                      {"cases", cases}};
  j["witness"] = r.witness ? to_json(r.cases[*r.witness]) : nlohmann::json(nullptr);
  return j;
}

nlohmann::json to_json(const Prop31Report& r) {
  return {{"statement-variant", to_json(r.statement)},
          {"proof-variant", to_json(r.proof)},
          {"d-estimate", r.d_estimate ? nlohmann::json(*r.d_estimate) : nlohmann::json(nullptr)},
          {"verdict", r.pass ? "pass" : "fail"}};
}

nlohmann::json to_json(const GrowthFit& f) {
  nlohmann::json residuals = nlohmann::json::array();
  for (double v : f.log_residuals) residuals.push_back(finite_or_null(v));
  return {{"constant", finite_or_null(f.constant)},
          {"labels", f.labels},
          {"log-residuals", residuals},
          {"log-targets", f.log_targets},
          {"slope", f.slope},
          {"argmax", f.argmax ? nlohmann::json(*f.argmax) : nlohmann::json(nullptr)},
          {"sweep", to_json(f.sweep)}};
}

nlohmann::json to_json(const Th1Report& r) {
  return {{"vector-fit", to_json(r.vector_fit)},
          {"space-fit", to_json(r.space_fit)},
          {"vector-tail-slope", r.vector_tail_slope},
          {"space-tail-slope", r.space_tail_slope},
          {"constant-chain", {{"A", r.a}, {"A1", r.a1}, {"A2", r.a2}, {"A3", r.a3}}},
          {"preconditions", r.preconditions},
          {"verdict", r.pass ? "pass" : "fail"}};
}

}  // namespace roumieu
