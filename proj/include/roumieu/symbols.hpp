#pragma once

// Constant- and variable-coefficient differential operators through their
// symbols. The convention is D_j = -i d/dx_j, so Q(D) e^{i<xi,x>} = Q(xi) e^{i<xi,x>}.

#include <complex>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "roumieu/box.hpp"

namespace roumieu {

using Complex = std::complex<double>;

class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::vector<int> exponents);
  MultiIndex(std::initializer_list<int> exponents);

  static MultiIndex zero(std::size_t n) { return MultiIndex(std::vector<int>(n, 0)); }
  static MultiIndex unit(std::size_t n, std::size_t axis);

  std::size_t size() const noexcept { return e_.size(); }
  int operator[](std::size_t j) const { return e_[j]; }
  const std::vector<int>& exponents() const noexcept { return e_; }
  /// |alpha|
  int order() const noexcept;

  /// Componentwise alpha >= beta.
  bool dominates(const MultiIndex& beta) const;
  MultiIndex operator+(const MultiIndex& other) const;
  MultiIndex operator-(const MultiIndex& other) const;

  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;

 private:
  std::vector<int> e_;
};

/// Graded lexicographic order: by |alpha| first, then lexicographically.
struct GradedLex {
  bool operator()(const MultiIndex& a, const MultiIndex& b) const;
};

/// Every multi-index of length n with |alpha| == order, in graded-lex order.
std::vector<MultiIndex> multi_indices_of_order(std::size_t n, int order);
/// Every multi-index of length n with |alpha| <= max_order.
std::vector<MultiIndex> multi_indices_up_to(std::size_t n, int max_order);

/// Q(xi) = sum a_alpha xi^alpha with complex coefficients; no zero terms stored.
class SymbolPolynomial {
 public:
  using TermMap = std::map<MultiIndex, Complex, GradedLex>;

  SymbolPolynomial() = default;
  explicit SymbolPolynomial(std::size_t dimension);
  SymbolPolynomial(std::size_t dimension, TermMap terms);

  static SymbolPolynomial constant(std::size_t dimension, Complex c);
  static SymbolPolynomial monomial(const MultiIndex& alpha, Complex c = 1.0);

  std::size_t dimension() const noexcept { return n_; }
  const TermMap& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  /// max |alpha| over stored terms; 0 for the zero polynomial.
  int order() const noexcept { return order_; }
  /// Largest exponent of variable j over all terms.
  int degree_in(std::size_t j) const;
  Complex coefficient(const MultiIndex& alpha) const;

  /// Terms of top order only.
  SymbolPolynomial principal_part() const;

  SymbolPolynomial operator+(const SymbolPolynomial& other) const;
  SymbolPolynomial operator-(const SymbolPolynomial& other) const;
  SymbolPolynomial operator*(const SymbolPolynomial& other) const;
  SymbolPolynomial operator*(Complex scale) const;

  friend bool operator==(const SymbolPolynomial&, const SymbolPolynomial&) = default;

 private:
  void add_term(const MultiIndex& alpha, Complex c);
  void normalize();

  std::size_t n_ = 0;
  TermMap terms_;
  int order_ = 0;
};

SymbolPolynomial operator*(Complex scale, const SymbolPolynomial& q);

/// d^beta Q / d xi^beta.
SymbolPolynomial derive(const SymbolPolynomial& q, const MultiIndex& beta);
Complex eval(const SymbolPolynomial& q, std::span<const double> xi);
SymbolPolynomial pow(const SymbolPolynomial& q, unsigned k);

/// Sum over terms of |a_alpha xi^alpha|; the scale against which cancellation in
/// eval is judged.
double eval_abs(const SymbolPolynomial& q, std::span<const double> xi);

/// All nonzero derivatives d^alpha Q of a symbol, computed once. Evaluating the
/// strength function at many points goes through this table.
class DerivativeTable {
 public:
  explicit DerivativeTable(const SymbolPolynomial& q);

  const SymbolPolynomial& symbol() const noexcept { return entries_.front().second; }
  const std::vector<std::pair<MultiIndex, SymbolPolynomial>>& entries() const noexcept {
    return entries_;
  }
  /// sqrt(sum_alpha |Q^(alpha)(xi)|^2)
  double p_tilde(std::span<const double> xi) const;

 private:
  std::vector<std::pair<MultiIndex, SymbolPolynomial>> entries_;
};

/// Hormander's strength function.
double p_tilde(const SymbolPolynomial& q, std::span<const double> xi);

/// P(x, D) = sum_alpha a_alpha(x) D^alpha on an open box, a_alpha polynomial in x.
class VariableOperator {
 public:
  using CoefficientMap = std::map<MultiIndex, SymbolPolynomial, GradedLex>;

  VariableOperator(std::size_t dimension, CoefficientMap coefficients, BoxDomain domain);

  static VariableOperator from_constant(const SymbolPolynomial& q, BoxDomain domain);

  std::size_t dimension() const noexcept { return n_; }
  const CoefficientMap& coefficients() const noexcept { return coefficients_; }
  const BoxDomain& domain() const noexcept { return domain_; }
  int order() const noexcept;
  /// True when no coefficient depends on x.
  bool is_constant_coefficient() const;

  friend bool operator==(const VariableOperator&, const VariableOperator&) = default;

 private:
  std::size_t n_;
  CoefficientMap coefficients_;
  BoxDomain domain_;
};

/// P(x0, D) as a constant-coefficient symbol. Throws unless x0 lies in the closed box.
SymbolPolynomial freeze(const VariableOperator& p, std::span<const double> x0);

// Serialization: {"dimension": n, "terms": [{"alpha": [...], "re": .., "im": ..}]}
// and for variable operators {"dimension", "coefficients": [{"alpha", "poly"}],
// "domain": {"lo", "hi"}}.
nlohmann::json to_json(const SymbolPolynomial& q);
SymbolPolynomial symbol_from_json(const nlohmann::json& doc);
nlohmann::json to_json(const VariableOperator& p);
VariableOperator variable_from_json(const nlohmann::json& doc);
nlohmann::json to_json(const BoxDomain& box);
BoxDomain box_from_json(const nlohmann::json& doc);

/// Parses a JSON file; throws ParseError when unreadable or malformed.
nlohmann::json read_json_file(const std::string& path);
SymbolPolynomial read_symbol_file(const std::string& path);
VariableOperator read_variable_file(const std::string& path);

/// Human readable form, e.g. "xi1^2 + (0+1i)*xi2".
std::string to_string(const SymbolPolynomial& q);

}  // namespace roumieu
