#include "roumieu/sequences.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>

#include "roumieu/error.hpp"
#include "roumieu/regression.hpp"

namespace roumieu {

namespace {

constexpr std::int64_t kFactorialCache = 4096;

const std::vector<double>& factorial_table() {
  static const std::vector<double> table = [] {
    std::vector<double> t(kFactorialCache + 1);
    for (std::int64_t p = 0; p <= kFactorialCache; ++p) t[p] = std::lgamma(static_cast<double>(p) + 1.0);
    t[0] = t[1] = 0.0;
    return t;
  }();
  return table;
}

}  // namespace

double log_factorial(std::int64_t p) {
  if (p < 0) throw InvalidArgument("log_factorial of a negative integer");
  if (p <= kFactorialCache) return factorial_table()[static_cast<std::size_t>(p)];
  return std::lgamma(static_cast<double>(p) + 1.0);
}

double log_binomial(std::int64_t p, std::int64_t j) {
  if (j < 0 || j > p) throw InvalidArgument("log_binomial needs 0 <= j <= p");
  return log_factorial(p) - log_factorial(j) - log_factorial(p - j);
}

RoumieuSequence RoumieuSequence::gevrey(double s) {
  if (!(s >= 1.0) || !std::isfinite(s)) throw InvalidArgument("Gevrey order s must be >= 1");
  RoumieuSequence m;
  m.kind_ = Kind::gevrey;
  m.s_ = s;
  return m;
}

RoumieuSequence RoumieuSequence::table(std::vector<double> values) {
  if (values.empty()) throw InvalidArgument("sequence table is empty");
  RoumieuSequence m;
  m.kind_ = Kind::table;
  m.log_values_.reserve(values.size());
  for (double v : values) {
    if (!(v > 0.0) || !std::isfinite(v)) throw InvalidArgument("sequence table values must be positive");
    m.log_values_.push_back(std::log(v));
  }
  if (std::abs(values.front() - 1.0) > 1e-12) throw InvalidArgument("sequence table must start with M_0 = 1");
  m.log_values_.front() = 0.0;
  return m;
}

double RoumieuSequence::log_m(std::int64_t p) const {
  if (p < 0) throw InvalidArgument("sequence index must be nonnegative");
  switch (kind_) {
    case Kind::gevrey: return s_ * log_factorial(p);
    case Kind::table:
      if (p >= static_cast<std::int64_t>(log_values_.size()))
        throw InvalidArgument("sequence table has no entry for p = " + std::to_string(p));
      return log_values_[static_cast<std::size_t>(p)];
    case Kind::power: return d_ * base_->log_m(p);
  }
  return 0.0;
}

std::int64_t RoumieuSequence::max_index() const noexcept {
  switch (kind_) {
    case Kind::gevrey: return std::numeric_limits<std::int64_t>::max();
    case Kind::table: return static_cast<std::int64_t>(log_values_.size()) - 1;
    case Kind::power: return base_->max_index();
  }
  return 0;
}

std::string RoumieuSequence::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case Kind::gevrey: os << "gevrey(" << s_ << ")"; break;
    case Kind::table: os << "table(" << log_values_.size() << " entries)"; break;
    case Kind::power: os << base_->describe() << "^" << d_; break;
  }
  return os.str();
}

RoumieuSequence power_sequence(const RoumieuSequence& m, double d) {
  if (!(d > 0.0) || !std::isfinite(d)) throw InvalidArgument("power exponent d must be positive");
  if (d == 1.0) return m;
  RoumieuSequence out;
  out.kind_ = RoumieuSequence::Kind::power;
  if (m.kind_ == RoumieuSequence::Kind::power) {
    out.base_ = m.base_;
    out.d_ = d * m.d_;
  } else {
    out.base_ = std::make_shared<const RoumieuSequence>(m);
    out.d_ = d;
  }
  return out;
}

RoumieuSequence parse_table(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<double> values;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;
    std::int64_t p = 0;
    double v = 0.0;
    std::string rest;
    try {
      std::size_t used = 0;
      p = std::stoll(first, &used);
      if (used != first.size()) throw std::invalid_argument("index");
    } catch (const std::exception&) {
      throw ParseError("table line " + std::to_string(lineno) + ": bad index '" + first + "'");
    }
    if (!(ls >> v) || (ls >> rest))
      throw ParseError("table line " + std::to_string(lineno) + ": expected two columns 'p M_p'");
    if (p != static_cast<std::int64_t>(values.size()))
      throw ParseError("table line " + std::to_string(lineno) + ": indices must run 0, 1, 2, ...");
    values.push_back(v);
  }
  if (values.empty()) throw ParseError("table has no entries");
  try {
    return RoumieuSequence::table(std::move(values));
  } catch (const InvalidArgument& e) {
    throw ParseError(e.what());
  }
}

RoumieuSequence read_table_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_table(buf.str());
}

namespace {

void require_range(const RoumieuSequence& m, std::int64_t pmax) {
  if (m.max_index() < pmax)
    throw InvalidArgument("sequence defined only up to p = " + std::to_string(m.max_index()) +
                          ", need " + std::to_string(pmax));
}

double tail_slope_linear(const std::vector<double>& xs, const std::vector<double>& ys) {
  const std::size_t start = xs.size() / 2;
  return least_squares_slope(std::span(xs).subspan(start), std::span(ys).subspan(start));
}

}  // namespace

SequenceConditionReport check_basic(const RoumieuSequence& m, std::int64_t pmax) {
  if (pmax < 4) throw InvalidArgument("check_basic needs pmax >= 4");
  require_range(m, pmax);
  SequenceConditionReport rep;
  rep.pmax = pmax;

  std::vector<double> lm(static_cast<std::size_t>(pmax) + 1);
  for (std::int64_t p = 0; p <= pmax; ++p) lm[p] = m.log_m(p);

  if (std::abs(lm[0]) > kConditionTolerance) rep.h1 = {false, 0, std::nullopt};
  for (std::int64_t p = 1; p < pmax && rep.h1.pass; ++p)
    if (2.0 * lm[p] > lm[p - 1] + lm[p + 1] + kConditionTolerance) rep.h1 = {false, p, std::nullopt};

  for (std::int64_t p = 1; p < pmax && rep.root_monotone.pass; ++p) {
    const double lhs = static_cast<double>(p + 1) / static_cast<double>(p) * lm[p];
    if (lhs > lm[p + 1] + kConditionTolerance) rep.root_monotone = {false, p, std::nullopt};
  }

  double best = 0.0;
  for (std::int64_t p = 0; p <= pmax; ++p) {
    for (std::int64_t j = 0; j <= p; ++j) {
      const double split = lm[p - j] + lm[j];
      if (rep.h3_left.pass && log_binomial(p, j) + split > lm[p] + kConditionTolerance)
        rep.h3_left = {false, p, j};
      if (p > 0) best = std::max(best, (lm[p] - split) / static_cast<double>(p));
    }
  }
  rep.h3_right_h = std::exp(best);
  return rep;
}

double fit_power_bound(const RoumieuSequence& m, std::int64_t mu, std::int64_t nu, std::int64_t pmax) {
  if (mu <= 0 || nu <= 0) throw InvalidArgument("power-bound exponent must be a positive rational");
  const std::int64_t g = std::gcd(mu, nu);
  mu /= g;
  nu /= g;
  if (mu < nu) throw InvalidArgument("power-bound exponent m must be >= 1");
  const double exponent = static_cast<double>(mu) / static_cast<double>(nu);
  double best = -std::numeric_limits<double>::infinity();
  for (std::int64_t p = nu; p <= pmax; p += nu) {
    const std::int64_t pm = p / nu * mu;
    if (pm > m.max_index()) break;
    best = std::max(best, (m.log_m(pm) - exponent * m.log_m(p)) / static_cast<double>(p));
  }
  if (best == -std::numeric_limits<double>::infinity())
    throw InvalidArgument("no tested p: denominator exceeds pmax or the table is too short");
  return std::exp(best);
}

InclusionFit fit_inclusion(const RoumieuSequence& m, const RoumieuSequence& n, std::int64_t pmax) {
  if (pmax < 4) throw InvalidArgument("fit_inclusion needs pmax >= 4");
  require_range(m, pmax);
  require_range(n, pmax);
  std::vector<double> r(static_cast<std::size_t>(pmax) + 1);
  for (std::int64_t p = 0; p <= pmax; ++p) r[p] = m.log_m(p) - n.log_m(p);

  // r_p / p stays bounded iff the increments stop growing; factorial-type
  // growth shows up as a positive trend of the increments against log p.
  std::vector<double> logp, incr;
  for (std::int64_t p = 1; p <= pmax; ++p) {
    logp.push_back(std::log(static_cast<double>(p)));
    incr.push_back(r[p] - r[p - 1]);
  }
  InclusionFit fit;
  fit.tail_slope = tail_slope_linear(logp, incr);
  if (fit.tail_slope > kSequenceSlopeTolerance) {
    fit.holds = false;
    std::int64_t arg = 1;
    for (std::int64_t p = 1; p <= pmax; ++p)
      if (r[p] / p >= r[arg] / arg) arg = p;
    fit.witness_p = arg;
    return fit;
  }
  const std::size_t start = incr.size() / 2;
  const double log_l = std::max(0.0, *std::max_element(incr.begin() + static_cast<std::ptrdiff_t>(start), incr.end()));
  double log_c = -std::numeric_limits<double>::infinity();
  for (std::int64_t p = 0; p <= pmax; ++p) log_c = std::max(log_c, r[p] - static_cast<double>(p) * log_l);
  fit.holds = true;
  fit.l = std::exp(log_l);
  fit.c = std::exp(log_c);
  return fit;
}

std::vector<DominationResult> check_gevrey_domination(const RoumieuSequence& m,
                                                      const std::vector<double>& ls,
                                                      std::int64_t pmax) {
  if (pmax < 4) throw InvalidArgument("check_gevrey_domination needs pmax >= 4");
  require_range(m, pmax);
  std::vector<DominationResult> out;
  for (double l : ls) {
    if (!(l > 0.0)) throw InvalidArgument("domination test needs L > 0");
    std::vector<double> ps, g;
    for (std::int64_t p = 0; p <= pmax; ++p) {
      ps.push_back(static_cast<double>(p));
      g.push_back(log_factorial(p) - static_cast<double>(p) * std::log(l) - m.log_m(p));
    }
    DominationResult res;
    res.l = l;
    res.tail_slope = tail_slope_linear(ps, g);
    res.holds = res.tail_slope <= kSequenceSlopeTolerance;
    if (res.holds) res.c = std::exp(*std::max_element(g.begin(), g.end()));
    out.push_back(res);
  }
  return out;
}

using nlohmann::json;

namespace {

json check_json(const ConditionCheck& c) {
  json j = {{"pass", c.pass}};
  j["first_failing_p"] = c.first_p ? json(*c.first_p) : json(nullptr);
  if (c.first_j) j["first_failing_j"] = *c.first_j;
  return j;
}

}  // namespace

json to_json(const InclusionFit& f) {
  json j = {{"holds", f.holds}, {"tail_slope", f.tail_slope}};
  if (f.holds) {
    j["L"] = f.l;
    j["C"] = f.c;
  } else {
    j["witness_p"] = f.witness_p ? json(*f.witness_p) : json(nullptr);
  }
  return j;
}

json to_json(const SequenceConditionReport& r) {
  json j = {{"pmax", r.pmax},
            {"h1", check_json(r.h1)},
            {"root_monotone", check_json(r.root_monotone)},
            {"h3_left", check_json(r.h3_left)},
            {"h3_right_H", r.h3_right_h}};
  if (r.h4_b) j["h4_B"] = *r.h4_b;
  if (r.inclusion) j["inclusion"] = to_json(*r.inclusion);
  return j;
}

json to_json(const DominationResult& d) {
  json j = {{"L", d.l}, {"holds", d.holds}, {"tail_slope", d.tail_slope}};
  j["C"] = d.holds ? json(d.c) : json(nullptr);
  return j;
}

}  // namespace roumieu
