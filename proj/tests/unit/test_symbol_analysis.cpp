#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "../support/generators.hpp"
#include "roumieu/error.hpp"
#include "roumieu/regression.hpp"
#include "roumieu/symbol_analysis.hpp"

using namespace roumieu;

namespace {

SymbolPolynomial mono(std::vector<int> e, Complex c = 1.0) { return SymbolPolynomial::monomial(MultiIndex(e), c); }

SymbolPolynomial laplacian() { return mono({2, 0}) + mono({0, 2}); }
SymbolPolynomial heat() { return mono({2, 0}) + mono({0, 1}, Complex(0, 1)); }
SymbolPolynomial wave() { return mono({2, 0}) - mono({0, 2}); }

}  // namespace

TEST_CASE("least squares slope recovers exact lines") {
  std::vector<double> x{0, 1, 2, 3, 4};
  std::vector<double> y;
  for (double v : x) y.push_back(-1.5 * v + 2.0);
  CHECK(least_squares_slope(x, y) == doctest::Approx(-1.5).epsilon(1e-14));
  std::vector<double> one{1.0};
  CHECK(least_squares_slope(one, one) == 0.0);
  std::vector<double> flat{2, 2, 2};
  CHECK(least_squares_slope(flat, std::vector<double>{1, 2, 3}) == 0.0);
}

TEST_CASE("increasing tail") {
  std::vector<double> y{5, 1, 2, 3};
  CHECK(increasing_tail(y, 3));
  CHECK_FALSE(increasing_tail(y, 4));
}

TEST_CASE("rational snapping picks the simplest nearby fraction") {
  auto r = snap_rational(2.0000001);
  REQUIRE(r);
  CHECK(r->first == 2);
  CHECK(r->second == 1);
  r = snap_rational(1.4995);
  REQUIRE(r);
  CHECK(r->first == 3);
  CHECK(r->second == 2);
  r = snap_rational(1.0 / 3.0);
  REQUIRE(r);
  CHECK(r->first == 1);
  CHECK(r->second == 3);
  CHECK_FALSE(snap_rational(std::numbers::pi, 3, 1e-6).has_value());
}

TEST_CASE("ray directions are unit vectors and cover the axes") {
  RayConfig cfg;
  cfg.directions = 32;
  const auto dirs = ray_directions(3, cfg);
  CHECK(dirs.size() >= 32);
  for (const auto& d : dirs) {
    double s = 0.0;
    for (double v : d) s += v * v;
    CHECK(std::sqrt(s) == doctest::Approx(1.0).epsilon(1e-12));
  }
  for (std::size_t j = 0; j < 3; ++j) {
    bool found = false;
    for (const auto& d : dirs) found = found || std::abs(d[j] - 1.0) < 1e-12;
    CHECK(found);
  }
  CHECK(ray_directions(3, cfg) == dirs);
}

TEST_CASE("ray config validation") {
  RayConfig cfg;
  cfg.radii = 3;
  CHECK_THROWS_AS(cfg.validate(2), InvalidArgument);
  cfg = RayConfig{};
  cfg.rho = 1.0;
  CHECK_THROWS_AS(cfg.validate(2), InvalidArgument);
  CHECK(RayConfig{}.radius_grid().size() == 41);
}

TEST_CASE("elliptic symbols have d = 1") {
  const auto r = estimate_d(laplacian());
  CHECK(r.verdict == HypoVerdict::consistent);
  REQUIRE(r.d_estimate);
  CHECK(*r.d_estimate == doctest::Approx(1.0).epsilon(0.05));
  REQUIRE(r.d_rational);
  CHECK(r.d_rational->first == 1);
  CHECK(r.d_rational->second == 1);

  const auto r2 = estimate_d(laplacian() + mono({1, 0}));
  REQUIRE(r2.d_estimate);
  CHECK(std::abs(*r2.d_estimate - 1.0) <= 0.05);
}

TEST_CASE("heat symbol has d = 2") {
  const auto r = estimate_d(heat());
  REQUIRE(r.d_estimate);
  CHECK(std::abs(*r.d_estimate - 2.0) <= 0.2);
  REQUIRE(r.d_rational);
  CHECK(r.d_rational->first == 2);
  CHECK(r.d_rational->second == 1);
}

TEST_CASE("heat symbol fails the estimate with d = 1 and passes with d = 2") {
  CHECK(check_hypoelliptic(heat(), 1.0).verdict == HypoVerdict::violated);
  CHECK(check_hypoelliptic(heat(), 2.0).verdict == HypoVerdict::consistent);
}

TEST_CASE("wave symbol is not hypoelliptic; witness lies near a characteristic line") {
  const auto r = estimate_d(wave());
  CHECK(r.verdict == HypoVerdict::violated);
  REQUIRE(r.witness);
  const auto& th = r.witness->direction;
  // characteristic directions: |theta1| = |theta2|
  const double angle = std::atan2(std::abs(th[1]), std::abs(th[0]));
  CHECK(std::abs(angle - std::numbers::pi / 4) <= 1e-2);
}

TEST_CASE("hypoellipticity report is deterministic") {
  CHECK(to_json(estimate_d(heat())) == to_json(estimate_d(heat())));
}

TEST_CASE("strength comparison") {
  CHECK(equally_strong(laplacian(), laplacian()).verdict == StrengthVerdict::equally_strong);
  // adding lower order terms does not change the strength of an elliptic symbol
  CHECK(equally_strong(laplacian(), laplacian() + mono({1, 0}, 3.0)).verdict == StrengthVerdict::equally_strong);
  // heat is weaker than the Laplacian
  CHECK(equally_strong(laplacian(), heat()).verdict == StrengthVerdict::q_weaker);
  CHECK(equally_strong(heat(), laplacian()).verdict == StrengthVerdict::p_weaker);
  // xi1^2 vs xi2^2 are incomparable
  CHECK(equally_strong(mono({2, 0}), mono({0, 2})).verdict == StrengthVerdict::incomparable);
}

TEST_CASE("equal strength is symmetric on random elliptic pairs (property)") {
  gen::Rng rng(17);
  RayConfig cfg;
  cfg.directions = 64;
  for (int trial = 0; trial < 10; ++trial) {
    const auto lower = gen::symbol(rng, 2, 1, 3);
    const auto p = laplacian() * Complex(gen::uniform(rng, 0.5, 2.0)) + lower;
    const auto a = equally_strong(laplacian(), p, cfg).verdict;
    const auto b = equally_strong(p, laplacian(), cfg).verdict;
    CHECK(a == StrengthVerdict::equally_strong);
    CHECK(b == StrengthVerdict::equally_strong);
  }
}

TEST_CASE("constant strength of variable operators") {
  VariableOperator::CoefficientMap cm;
  cm[MultiIndex{2, 0}] = SymbolPolynomial::constant(2, 1.0);
  cm[MultiIndex{0, 2}] = SymbolPolynomial::constant(2, 1.0);
  cm[MultiIndex{1, 0}] = mono({1, 0});
  const VariableOperator good(2, cm, BoxDomain({-1, -1}, {1, 1}));
  const auto r = check_constant_strength(good);
  CHECK(r.verdict == StrengthVerdict::constant_strength);
  CHECK(r.points.size() == constant_strength_points(good.domain(), 3).size());

  VariableOperator::CoefficientMap dm;
  dm[MultiIndex{2}] = SymbolPolynomial::monomial({1});
  const VariableOperator bad(1, dm, BoxDomain({-1}, {1}));
  const auto rb = check_constant_strength(bad);
  CHECK(rb.verdict == StrengthVerdict::not_constant_strength);
  REQUIRE(rb.witness);
  REQUIRE(rb.witness->x);
  CHECK(std::abs((*rb.witness->x)[0]) <= 1e-9);
}
