#include "roumieu/symbols.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "roumieu/error.hpp"

namespace roumieu {

// ---------------------------------------------------------------- MultiIndex

MultiIndex::MultiIndex(std::vector<int> exponents) : e_(std::move(exponents)) {
  for (int v : e_)
    if (v < 0) throw InvalidArgument("multi-index exponents must be nonnegative");
}

MultiIndex::MultiIndex(std::initializer_list<int> exponents)
    : MultiIndex(std::vector<int>(exponents)) {}

MultiIndex MultiIndex::unit(std::size_t n, std::size_t axis) {
  std::vector<int> e(n, 0);
  e.at(axis) = 1;
  return MultiIndex(std::move(e));
}

int MultiIndex::order() const noexcept { return std::accumulate(e_.begin(), e_.end(), 0); }

bool MultiIndex::dominates(const MultiIndex& beta) const {
  if (beta.size() != size()) throw DimensionMismatch("multi-index dimensions differ");
  for (std::size_t j = 0; j < size(); ++j)
    if (e_[j] < beta.e_[j]) return false;
  return true;
}

MultiIndex MultiIndex::operator+(const MultiIndex& other) const {
  if (other.size() != size()) throw DimensionMismatch("multi-index dimensions differ");
  std::vector<int> e(e_);
  for (std::size_t j = 0; j < size(); ++j) e[j] += other.e_[j];
  return MultiIndex(std::move(e));
}

MultiIndex MultiIndex::operator-(const MultiIndex& other) const {
  if (other.size() != size()) throw DimensionMismatch("multi-index dimensions differ");
  std::vector<int> e(e_);
  for (std::size_t j = 0; j < size(); ++j) e[j] -= other.e_[j];
  return MultiIndex(std::move(e));
}

bool GradedLex::operator()(const MultiIndex& a, const MultiIndex& b) const {
  const int oa = a.order(), ob = b.order();
  if (oa != ob) return oa < ob;
  return a.exponents() < b.exponents();
}

namespace {

void enumerate_order(std::size_t n, int remaining, std::size_t pos, std::vector<int>& cur,
                     std::vector<MultiIndex>& out) {
  if (pos + 1 == n) {
    cur[pos] = remaining;
    out.emplace_back(cur);
    return;
  }
  for (int v = remaining; v >= 0; --v) {
    cur[pos] = v;
    enumerate_order(n, remaining - v, pos + 1, cur, out);
  }
}

}  // namespace

std::vector<MultiIndex> multi_indices_of_order(std::size_t n, int order) {
  std::vector<MultiIndex> out;
  if (n == 0 || order < 0) return out;
  std::vector<int> cur(n, 0);
  enumerate_order(n, order, 0, cur, out);
  std::sort(out.begin(), out.end(), GradedLex{});
  return out;
}

std::vector<MultiIndex> multi_indices_up_to(std::size_t n, int max_order) {
  std::vector<MultiIndex> out;
  for (int k = 0; k <= max_order; ++k) {
    auto level = multi_indices_of_order(n, k);
    out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

// ---------------------------------------------------------- SymbolPolynomial

SymbolPolynomial::SymbolPolynomial(std::size_t dimension) : n_(dimension) {}

SymbolPolynomial::SymbolPolynomial(std::size_t dimension, TermMap terms)
    : n_(dimension), terms_(std::move(terms)) {
  for (const auto& [alpha, c] : terms_)
    if (alpha.size() != n_) throw DimensionMismatch("term multi-index length differs from dimension");
  normalize();
}

SymbolPolynomial SymbolPolynomial::constant(std::size_t dimension, Complex c) {
  SymbolPolynomial q(dimension);
  q.add_term(MultiIndex::zero(dimension), c);
  q.normalize();
  return q;
}

SymbolPolynomial SymbolPolynomial::monomial(const MultiIndex& alpha, Complex c) {
  SymbolPolynomial q(alpha.size());
  q.add_term(alpha, c);
  q.normalize();
  return q;
}

void SymbolPolynomial::add_term(const MultiIndex& alpha, Complex c) { terms_[alpha] += c; }

void SymbolPolynomial::normalize() {
  std::erase_if(terms_, [](const auto& kv) { return kv.second == Complex(0.0, 0.0); });
  order_ = 0;
  for (const auto& [alpha, c] : terms_) order_ = std::max(order_, alpha.order());
}

int SymbolPolynomial::degree_in(std::size_t j) const {
  int d = 0;
  for (const auto& [alpha, c] : terms_) d = std::max(d, alpha[j]);
  return d;
}

Complex SymbolPolynomial::coefficient(const MultiIndex& alpha) const {
  auto it = terms_.find(alpha);
  return it == terms_.end() ? Complex{} : it->second;
}

SymbolPolynomial SymbolPolynomial::principal_part() const {
  TermMap top;
  for (const auto& [alpha, c] : terms_)
    if (alpha.order() == order_) top.emplace(alpha, c);
  return SymbolPolynomial(n_, std::move(top));
}

SymbolPolynomial SymbolPolynomial::operator+(const SymbolPolynomial& other) const {
  if (other.n_ != n_) throw DimensionMismatch("cannot add symbols of different dimension");
  SymbolPolynomial r(*this);
  for (const auto& [alpha, c] : other.terms_) r.add_term(alpha, c);
  r.normalize();
  return r;
}

SymbolPolynomial SymbolPolynomial::operator-(const SymbolPolynomial& other) const {
  return *this + other * Complex(-1.0, 0.0);
}

SymbolPolynomial SymbolPolynomial::operator*(const SymbolPolynomial& other) const {
  if (other.n_ != n_) throw DimensionMismatch("cannot multiply symbols of different dimension");
  SymbolPolynomial r(n_);
  for (const auto& [a, ca] : terms_)
    for (const auto& [b, cb] : other.terms_) r.add_term(a + b, ca * cb);
  r.normalize();
  return r;
}

SymbolPolynomial SymbolPolynomial::operator*(Complex scale) const {
  SymbolPolynomial r(n_);
  for (const auto& [alpha, c] : terms_) r.add_term(alpha, c * scale);
  r.normalize();
  return r;
}

SymbolPolynomial operator*(Complex scale, const SymbolPolynomial& q) { return q * scale; }

SymbolPolynomial derive(const SymbolPolynomial& q, const MultiIndex& beta) {
  if (beta.size() != q.dimension())
    throw DimensionMismatch("derivative multi-index has length " + std::to_string(beta.size()) +
                            ", symbol dimension is " + std::to_string(q.dimension()));
  SymbolPolynomial::TermMap out;
  for (const auto& [alpha, c] : q.terms()) {
    if (!alpha.dominates(beta)) continue;
    double factor = 1.0;
    for (std::size_t j = 0; j < alpha.size(); ++j)
      for (int k = 0; k < beta[j]; ++k) factor *= static_cast<double>(alpha[j] - k);
    out.emplace(alpha - beta, c * factor);
  }
  return SymbolPolynomial(q.dimension(), std::move(out));
}

namespace {

// powers[j][k] = xi_j^k, built by repeated multiplication.
std::vector<std::vector<double>> power_table(const SymbolPolynomial& q,
                                             std::span<const double> xi) {
  std::vector<std::vector<double>> powers(xi.size());
  for (std::size_t j = 0; j < xi.size(); ++j) {
    const int deg = q.degree_in(j);
    powers[j].resize(static_cast<std::size_t>(deg) + 1);
    powers[j][0] = 1.0;
    for (int k = 1; k <= deg; ++k) powers[j][k] = powers[j][k - 1] * xi[j];
  }
  return powers;
}

double monomial_value(const MultiIndex& alpha, const std::vector<std::vector<double>>& powers) {
  double v = 1.0;
  for (std::size_t j = 0; j < alpha.size(); ++j) v *= powers[j][alpha[j]];
  return v;
}

void check_point(const SymbolPolynomial& q, std::span<const double> xi) {
  if (xi.size() != q.dimension())
    throw DimensionMismatch("point has dimension " + std::to_string(xi.size()) +
                            ", symbol dimension is " + std::to_string(q.dimension()));
}

}  // namespace

Complex eval(const SymbolPolynomial& q, std::span<const double> xi) {
  check_point(q, xi);
  const auto powers = power_table(q, xi);
  Complex sum{};
  for (const auto& [alpha, c] : q.terms()) sum += c * monomial_value(alpha, powers);
  return sum;
}

double eval_abs(const SymbolPolynomial& q, std::span<const double> xi) {
  check_point(q, xi);
  const auto powers = power_table(q, xi);
  double sum = 0.0;
  for (const auto& [alpha, c] : q.terms()) sum += std::abs(c) * std::abs(monomial_value(alpha, powers));
  return sum;
}

SymbolPolynomial pow(const SymbolPolynomial& q, unsigned k) {
  SymbolPolynomial result = SymbolPolynomial::constant(q.dimension(), 1.0);
  SymbolPolynomial base = q;
  while (k > 0) {
    if (k & 1u) result = result * base;
    k >>= 1u;
    if (k > 0) base = base * base;
  }
  return result;
}

DerivativeTable::DerivativeTable(const SymbolPolynomial& q) {
  const std::size_t n = q.dimension();
  std::vector<int> bound(n);
  for (std::size_t j = 0; j < n; ++j) bound[j] = q.degree_in(j);
  for (const auto& beta : multi_indices_up_to(n, q.order())) {
    bool inside = true;
    for (std::size_t j = 0; j < n; ++j) inside = inside && beta[j] <= bound[j];
    if (!inside) continue;
    auto dq = derive(q, beta);
    if (beta.order() == 0 || !dq.is_zero()) entries_.emplace_back(beta, std::move(dq));
  }
}

double DerivativeTable::p_tilde(std::span<const double> xi) const {
  double sum = 0.0;
  for (const auto& [beta, dq] : entries_) sum += std::norm(eval(dq, xi));
  return std::sqrt(sum);
}

double p_tilde(const SymbolPolynomial& q, std::span<const double> xi) {
  check_point(q, xi);
  return DerivativeTable(q).p_tilde(xi);
}

// ---------------------------------------------------------- VariableOperator

VariableOperator::VariableOperator(std::size_t dimension, CoefficientMap coefficients,
                                   BoxDomain domain)
    : n_(dimension), coefficients_(std::move(coefficients)), domain_(std::move(domain)) {
  if (domain_.dimension() != n_) throw DimensionMismatch("operator domain dimension differs");
  for (const auto& [alpha, a] : coefficients_) {
    if (alpha.size() != n_) throw DimensionMismatch("operator multi-index length differs");
    if (a.dimension() != n_) throw DimensionMismatch("coefficient polynomial dimension differs");
  }
  std::erase_if(coefficients_, [](const auto& kv) { return kv.second.is_zero(); });
}

VariableOperator VariableOperator::from_constant(const SymbolPolynomial& q, BoxDomain domain) {
  CoefficientMap coeffs;
  for (const auto& [alpha, c] : q.terms())
    coeffs.emplace(alpha, SymbolPolynomial::constant(q.dimension(), c));
  return VariableOperator(q.dimension(), std::move(coeffs), std::move(domain));
}

int VariableOperator::order() const noexcept {
  int m = 0;
  for (const auto& [alpha, a] : coefficients_) m = std::max(m, alpha.order());
  return m;
}

bool VariableOperator::is_constant_coefficient() const {
  return std::all_of(coefficients_.begin(), coefficients_.end(),
                     [](const auto& kv) { return kv.second.order() == 0; });
}

SymbolPolynomial freeze(const VariableOperator& p, std::span<const double> x0) {
  if (x0.size() != p.dimension()) throw DimensionMismatch("freeze point dimension differs");
  const auto& box = p.domain();
  double scale = 0.0;
  for (std::size_t j = 0; j < box.dimension(); ++j)
    scale = std::max({scale, std::abs(box.lo()[j]), std::abs(box.hi()[j])});
  if (!box.contains_closure(x0, 1e-12 * std::max(scale, 1.0)))
    throw InvalidArgument("freeze point lies outside the closed operator domain");
  SymbolPolynomial::TermMap terms;
  for (const auto& [alpha, a] : p.coefficients()) terms.emplace(alpha, eval(a, x0));
  return SymbolPolynomial(p.dimension(), std::move(terms));
}

// -------------------------------------------------------------- serialization

using nlohmann::json;

json to_json(const SymbolPolynomial& q) {
  json terms = json::array();
  for (const auto& [alpha, c] : q.terms())
    terms.push_back({{"alpha", alpha.exponents()}, {"re", c.real()}, {"im", c.imag()}});
  return {{"dimension", q.dimension()}, {"terms", std::move(terms)}};
}

namespace {

std::size_t read_dimension(const json& doc) {
  if (!doc.is_object() || !doc.contains("dimension") || !doc["dimension"].is_number_integer())
    throw ParseError("missing integer field 'dimension'");
  const auto n = doc["dimension"].get<long long>();
  if (n < 1 || n > 16) throw ParseError("field 'dimension' must be in [1, 16]");
  return static_cast<std::size_t>(n);
}

MultiIndex read_alpha(const json& node, std::size_t n) {
  if (!node.is_array()) throw ParseError("field 'alpha' must be an array");
  std::vector<int> e;
  for (const auto& v : node) {
    if (!v.is_number_integer() || v.get<long long>() < 0 || v.get<long long>() > 1000)
      throw ParseError("'alpha' entries must be nonnegative integers");
    e.push_back(v.get<int>());
  }
  if (e.size() != n) throw ParseError("'alpha' length differs from 'dimension'");
  return MultiIndex(std::move(e));
}

double read_number(const json& node, const char* key, double fallback) {
  if (!node.contains(key)) return fallback;
  if (!node[key].is_number()) throw ParseError(std::string("field '") + key + "' must be a number");
  return node[key].get<double>();
}

}  // namespace

SymbolPolynomial symbol_from_json(const json& doc) {
  const std::size_t n = read_dimension(doc);
  if (!doc.contains("terms") || !doc["terms"].is_array()) throw ParseError("missing array field 'terms'");
  SymbolPolynomial::TermMap terms;
  for (const auto& t : doc["terms"]) {
    if (!t.is_object() || !t.contains("alpha")) throw ParseError("each term needs 'alpha'");
    const auto alpha = read_alpha(t["alpha"], n);
    const Complex c(read_number(t, "re", 0.0), read_number(t, "im", 0.0));
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) throw ParseError("non-finite coefficient");
    terms[alpha] += c;
  }
  return SymbolPolynomial(n, std::move(terms));
}

json to_json(const BoxDomain& box) { return {{"lo", box.lo()}, {"hi", box.hi()}}; }

BoxDomain box_from_json(const json& doc) {
  if (!doc.is_object() || !doc.contains("lo") || !doc.contains("hi"))
    throw ParseError("box needs 'lo' and 'hi'");
  try {
    return BoxDomain(doc["lo"].get<std::vector<double>>(), doc["hi"].get<std::vector<double>>());
  } catch (const json::exception& e) {
    throw ParseError(std::string("box corners: ") + e.what());
  } catch (const Error& e) {
    throw ParseError(e.what());
  }
}

json to_json(const VariableOperator& p) {
  json coeffs = json::array();
  for (const auto& [alpha, a] : p.coefficients())
    coeffs.push_back({{"alpha", alpha.exponents()}, {"poly", to_json(a)}});
  return {{"dimension", p.dimension()}, {"coefficients", std::move(coeffs)},
          {"domain", to_json(p.domain())}};
}

VariableOperator variable_from_json(const json& doc) {
  const std::size_t n = read_dimension(doc);
  if (!doc.contains("coefficients") || !doc["coefficients"].is_array())
    throw ParseError("missing array field 'coefficients'");
  if (!doc.contains("domain")) throw ParseError("missing field 'domain'");
  VariableOperator::CoefficientMap coeffs;
  for (const auto& c : doc["coefficients"]) {
    if (!c.is_object() || !c.contains("alpha") || !c.contains("poly"))
      throw ParseError("each coefficient needs 'alpha' and 'poly'");
    const auto alpha = read_alpha(c["alpha"], n);
    auto poly = symbol_from_json(c["poly"]);
    if (poly.dimension() != n) throw ParseError("coefficient polynomial dimension differs");
    auto [it, inserted] = coeffs.emplace(alpha, poly);
    if (!inserted) it->second = it->second + poly;
  }
  auto box = box_from_json(doc["domain"]);
  if (box.dimension() != n) throw ParseError("domain dimension differs");
  return VariableOperator(n, std::move(coeffs), std::move(box));
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError("'" + path + "': " + e.what());
  }
}

SymbolPolynomial read_symbol_file(const std::string& path) {
  return symbol_from_json(read_json_file(path));
}

VariableOperator read_variable_file(const std::string& path) {
  return variable_from_json(read_json_file(path));
}

std::string to_string(const SymbolPolynomial& q) {
  if (q.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [alpha, c] : q.terms()) {
    if (!first) os << " + ";
    first = false;
    bool unit = c == Complex(1.0, 0.0);
    if (!unit || alpha.order() == 0) {
      if (c.imag() == 0.0) os << c.real();
      else os << "(" << c.real() << (c.imag() < 0 ? "" : "+") << c.imag() << "i)";
    }
    bool need_star = !unit;
    for (std::size_t j = 0; j < alpha.size(); ++j) {
      if (alpha[j] == 0) continue;
      if (need_star) os << "*";
      os << "xi" << (j + 1);
      if (alpha[j] > 1) os << "^" << alpha[j];
      need_star = true;
    }
  }
  return os.str();
}

}  // namespace roumieu
