#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>

#include "../support/generators.hpp"
#include "roumieu/error.hpp"
#include "roumieu/numerics.hpp"

using namespace roumieu;

namespace {

SymbolPolynomial mono(std::vector<int> e, Complex c = 1.0) { return SymbolPolynomial::monomial(MultiIndex(e), c); }
SymbolPolynomial laplacian() { return mono({2, 0}) + mono({0, 2}); }
SymbolPolynomial heat() { return mono({2, 0}) + mono({0, 1}, Complex(0, 1)); }

double rel_l2(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    num += std::norm(a[i] - b[i]);
    den += std::norm(b[i]);
  }
  return std::sqrt(num / den);
}

GridFunction constant_one(const BoxDomain& cell, int res) {
  const GridSpec spec{cell, res};
  return GridFunction(spec, std::vector<Complex>(spec.size(), Complex(1.0)));
}

// Gaussian times the boundary cutoff, written out independently of the fixture code.
double bump(const std::vector<double>& x, const std::vector<double>& c, double w, const BoxDomain& cell) {
  double r2 = 0.0, cut = 1.0;
  const auto mid = cell.center();
  for (std::size_t j = 0; j < x.size(); ++j) {
    r2 += (x[j] - c[j]) * (x[j] - c[j]);
    const double t = (x[j] - mid[j]) / (cell.side(j) / 2);
    cut *= std::abs(t) < 1.0 ? std::exp(1.0 - 1.0 / (1.0 - t * t)) : 0.0;
  }
  return std::exp(-r2 / (2 * w * w)) * cut;
}

using Field = std::function<double(const std::vector<double>&)>;

// Central difference of order a (a <= 3) along one axis.
Field central(const Field& f, std::size_t axis, int a, double h) {
  if (a == 0) return f;
  return [=](const std::vector<double>& x) {
    auto at = [&](double s) {
      auto y = x;
      y[axis] += s * h;
      return f(y);
    };
    switch (a) {
      case 1: return (at(1) - at(-1)) / (2 * h);
      case 2: return (-at(2) + 16 * at(1) - 30 * at(0) + 16 * at(-1) - at(-2)) / (12 * h * h);
      default: return (at(2) - 2 * at(1) + 2 * at(-1) - at(-2)) / (2 * h * h * h);
    }
  };
}

GridFunction tabulate(const GridSpec& spec, const Field& f) {
  std::vector<Complex> v(spec.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = f(spec.node(i));
  return GridFunction(spec, std::move(v));
}

}  // namespace

TEST_CASE("grid validation and nodes") {
  const GridSpec g{BoxDomain({0, -1}, {1, 1}), 16};
  CHECK_NOTHROW(g.validate());
  CHECK(g.size() == 256);
  CHECK(g.node(0) == std::vector<double>{0.0, -1.0});
  CHECK(g.node(1)[1] == doctest::Approx(-1.0 + 2.0 / 16));
  CHECK(g.signed_mode(15) == -1);
  CHECK_THROWS_AS((GridSpec{BoxDomain({0}, {1}), 24}.validate()), InvalidArgument);
  CHECK_THROWS_AS((GridSpec{BoxDomain({0}, {1}), 8}.validate()), InvalidArgument);
  const auto d = default_grid(BoxDomain({-1, -1}, {1, 1}), 32, 1.5);
  CHECK(d.cell.side(0) == doctest::Approx(3.0));
}

TEST_CASE("FFT round trip (property)") {
  gen::Rng rng(1);
  for (std::size_t n = 1; n <= 3; ++n) {
    std::vector<double> lo(n, 0.0), hi(n, 1.0);
    const GridSpec spec{BoxDomain(lo, hi), 16};
    std::vector<Complex> v(spec.size());
    for (auto& c : v) c = gen::complex(rng);
    const auto back = fft_inverse(spec, fft_forward(spec, v));
    CHECK(rel_l2(back, v) <= 1e-12);
  }
}

TEST_CASE("plane waves are eigenfunctions of every symbol") {
  const GridSpec spec{BoxDomain({-0.75, -0.75}, {0.75, 0.75}), 64};
  gen::Rng rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    const std::vector<int> k{gen::integer(rng, -8, 8), gen::integer(rng, -8, 8)};
    const auto u = sample(Fixture::plane_wave(k), spec);
    const auto q = gen::symbol(rng, 2, 3);
    const std::vector<double> kt{spec.frequency(0, k[0]), spec.frequency(1, k[1])};
    const Complex lambda = eval(q, kt);
    const auto r = apply_operator(q, u);
    CHECK(r.resolved());
    std::vector<Complex> expect(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) expect[i] = lambda * u[i];
    CHECK(rel_l2(r.value.samples(), expect) <= 1e-10);
  }
}

TEST_CASE("Plancherel on bump fixtures") {
  const auto unit = WeightFunction::constant(2, 1.0);
  const GridSpec spec{BoxDomain({-0.75, -0.75}, {0.75, 0.75}), 64};
  for (double w : {0.05, 0.1, 0.2}) {
    for (const auto& f : {Fixture::gaussian_bump({}, w), Fixture::gaussian_bump({0.1, -0.1}, w, {3, -2}),
                          Fixture::polynomial_bump({}, w)}) {
      const auto u = sample(f, spec);
      const double a = cell_l2(u);
      CHECK(std::abs(weighted_norm(u, unit, 2.0) - a) <= 1e-6 * a);
    }
  }
}

TEST_CASE("restricted L2 of the constant function") {
  const BoxDomain unit_interval({0}, {1});
  const auto u = constant_one(unit_interval, 128);
  CHECK(std::abs(restricted_l2(u, unit_interval, 1.0 / 3.0) - std::sqrt(1.0 / 3.0)) <= 2.0 / 128);
  CHECK(restricted_l2(u, unit_interval, 0.0) == doctest::Approx(1.0));
  CHECK(restricted_l2(u, unit_interval, 0.5) == 0.0);
  CHECK(restricted_l2(u, unit_interval, 0.7) == 0.0);
  CHECK_THROWS_AS(restricted_l2(u, BoxDomain({-0.5}, {0.5}), 0.0), InvalidArgument);
}

TEST_CASE("restricted L2 is nonincreasing in delta (property)") {
  const GridSpec spec{BoxDomain({-0.75, -0.75}, {0.75, 0.75}), 64};
  const BoxDomain omega({-0.5, -0.5}, {0.5, 0.5});
  gen::Rng rng(4);
  for (int trial = 0; trial < 10; ++trial) {
    const auto u = sample(Fixture::gaussian_bump(gen::point(rng, 2, 0.3), gen::uniform(rng, 0.05, 0.3)), spec);
    double prev = restricted_l2(u, omega, 0.0);
    for (double d = 0.01; d < 0.5; d += 0.01) {
      const double cur = restricted_l2(u, omega, d);
      CHECK(cur <= prev * (1.0 + 1e-12));
      prev = cur;
    }
  }
}

TEST_CASE("shrink norm of the constant function") {
  const BoxDomain unit_interval({0}, {1});
  const auto u = constant_one(unit_interval, 128);
  // sup_{delta <= 1/2} delta sqrt(1 - 2 delta) at delta = 1/3
  CHECK(std::abs(shrink_norm(u, unit_interval, 1.0, 0.5) - std::pow(3.0, -1.5)) <= 1e-3);
  // for t below the maximizer the sup sits at t
  const double t = 1e-3;
  CHECK(shrink_norm(u, unit_interval, 1.0, t) == doctest::Approx(t * std::sqrt(1 - 2 * t)).epsilon(1e-3));
  CHECK(shrink_norm(u, unit_interval, 1.0, t) <= t * restricted_l2(u, unit_interval, 0.0));
}

TEST_CASE("shrink norm is monotone in t and mu (property)") {
  const GridSpec spec{BoxDomain({-0.75, -0.75}, {0.75, 0.75}), 64};
  const BoxDomain omega({-0.5, -0.5}, {0.5, 0.5});
  const auto u = sample(Fixture::gaussian_bump({}, 0.1), spec);
  CHECK(shrink_norm(u, omega, 1.0, 0.1) <= shrink_norm(u, omega, 1.0, 0.2) * (1 + 1e-12));
  // delta <= t < 1 makes delta^mu decreasing in mu
  CHECK(shrink_norm(u, omega, 2.0, 0.4) <= shrink_norm(u, omega, 1.0, 0.4) * (1 + 1e-12));
}

TEST_CASE("spectral Laplacian matches a finite-difference oracle") {
  const BoxDomain cell({-0.75, -0.75}, {0.75, 0.75});
  const GridSpec spec{cell, 128};
  const std::vector<double> c{0.05, -0.02};
  const double w = 0.1;
  const auto u = sample(Fixture::gaussian_bump(c, w), spec);
  const Field f = [&](const std::vector<double>& x) { return bump(x, c, w, cell); };
  const double h = 1e-3;
  const auto fx = central(f, 0, 2, h), fy = central(f, 1, 2, h);
  // xi1^2 + xi2^2 acts as -Laplacian
  const auto oracle = tabulate(spec, [&](const std::vector<double>& x) { return -(fx(x) + fy(x)); });
  const auto r = apply_operator(laplacian(), u);
  CHECK(r.resolved());
  CHECK(rel_l2(r.value.samples(), oracle.samples()) <= 1e-4);
}

TEST_CASE("one-shot power agrees with repeated application") {
  const BoxDomain cell({-0.75, -0.75}, {0.75, 0.75});
  const BoxDomain omega({-0.5, -0.5}, {0.5, 0.5});
  const auto u = sample(Fixture::gaussian_bump({}, 0.1), GridSpec{cell, 128});
  const auto a = iterate_norms(heat(), u, 4, omega, 0.05);
  const auto b = iterate_norms(VariableOperator::from_constant(heat(), cell), u, 4, omega, 0.05);
  REQUIRE(a.norms.size() == 5);
  REQUIRE(b.norms.size() == 5);
  for (std::size_t l = 0; l < 5; ++l) CHECK(std::abs(a.norms[l] - b.norms[l]) <= 1e-6 * a.norms[l]);
  CHECK(a.labels == std::vector<int>{0, 1, 2, 3, 4});
}

TEST_CASE("derivative norms of a plane wave") {
  const BoxDomain cell({-0.75, -0.75}, {0.75, 0.75});
  const BoxDomain omega({-0.5, -0.5}, {0.5, 0.5});
  const GridSpec spec{cell, 64};
  const std::vector<int> k{3, -5};
  const auto u = sample(Fixture::plane_wave(k), spec);
  const double k1 = std::abs(spec.frequency(0, 3)), k2 = std::abs(spec.frequency(1, -5));
  const double delta = 0.1;
  const double area = std::sqrt(0.8 * 0.8);
  const auto s = derivative_norms(u, 4, omega, delta);
  for (int a = 0; a <= 4; ++a) {
    double best = 0.0;
    for (int i = 0; i <= a; ++i) best = std::max(best, std::pow(k1, i) * std::pow(k2, a - i));
    CHECK(s.norms[a] == doctest::Approx(best * area).epsilon(1e-9));
    CHECK_FALSE(s.flagged[a]);
  }
}

TEST_CASE("derivative norms of a bump against finite differences") {
  const BoxDomain cell({-0.75, -0.75}, {0.75, 0.75});
  const BoxDomain omega({-0.5, -0.5}, {0.5, 0.5});
  const GridSpec spec{cell, 64};
  const std::vector<double> c{0.0, 0.0};
  const double w = 0.15;
  const auto u = sample(Fixture::gaussian_bump(c, w), spec);
  const Field f = [&](const std::vector<double>& x) { return bump(x, c, w, cell); };
  const auto s = derivative_norms(u, 3, omega, 0.05);
  for (int a = 0; a <= 3; ++a) {
    double best = 0.0;
    for (int i = 0; i <= a; ++i) {
      const auto d = central(central(f, 0, i, 1e-3), 1, a - i, 1e-3);
      best = std::max(best, restricted_l2(tabulate(spec, d), omega, 0.05));
    }
    CHECK(std::abs(s.norms[a] - best) <= 1e-3 * best);
  }
}

TEST_CASE("weighted norm of a modulated bump concentrates at the carrier frequency") {
  const BoxDomain cell({-0.75, -0.75}, {0.75, 0.75});
  const GridSpec spec{cell, 128};
  const std::vector<int> k{20, 8};
  const auto u = sample(Fixture::gaussian_bump({}, 0.3, k), spec);
  const auto pt = WeightFunction::p_tilde_of(laplacian());
  const std::vector<double> kt{spec.frequency(0, k[0]), spec.frequency(1, k[1])};
  const double ratio = weighted_norm(u, pt, std::numeric_limits<double>::infinity()) /
                       weighted_norm(u, WeightFunction::constant(2, 1.0), std::numeric_limits<double>::infinity());
  CHECK(std::abs(ratio - pt(kt)) <= 0.05 * pt(kt));
}

TEST_CASE("fixtures: identifiers, JSON and validation") {
  const auto f = Fixture::gaussian_bump({0, 0}, 0.1);
  CHECK(f.id() == "gaussianBump(center=[0 0],width=0.1)");
  const auto back = fixture_from_json(to_json(Fixture::gaussian_bump({0.1, 0.2}, 0.3, {1, 2})));
  CHECK(back.id() == Fixture::gaussian_bump({0.1, 0.2}, 0.3, {1, 2}).id());
  CHECK_THROWS_AS(fixture_from_json(nlohmann::json::parse(R"({"family": "planeWave", "frequency": [1.5, 0]})")),
                  InvalidArgument);
  CHECK_THROWS_AS(fixture_from_json(nlohmann::json::parse(R"({"family": "nope"})")), ParseError);
  CHECK_THROWS_AS(Fixture::gaussian_bump({}, 0.0), InvalidArgument);
  const GridSpec spec{BoxDomain({-1, -1}, {1, 1}), 16};
  const auto z = sample(Fixture::zero_function(), spec);
  CHECK(cell_l2(z) == 0.0);
  CHECK(cell_cutoff(spec, {1.0, 0.0}) == 0.0);
  CHECK(cell_cutoff(spec, {0.0, 0.0}) == 1.0);
}

TEST_CASE("under-resolved spectra are flagged") {
  const GridSpec spec{BoxDomain({-0.75, -0.75}, {0.75, 0.75}), 32};
  const auto u = sample(Fixture::gaussian_bump({}, 0.02), spec);
  const auto r = apply_operator(laplacian(), u);
  CHECK_FALSE(r.resolved());
  const auto s = derivative_norms(u, 2, BoxDomain({-0.5, -0.5}, {0.5, 0.5}), 0.0);
  CHECK(s.flagged[2]);
}

TEST_CASE("CSV export") {
  const GridSpec spec{BoxDomain({-0.75, -0.75}, {0.75, 0.75}), 32};
  const auto u = sample(Fixture::gaussian_bump({}, 0.2), spec);
  const auto s = iterate_norms(laplacian(), u, 2, BoxDomain({-0.5, -0.5}, {0.5, 0.5}), 0.0);
  std::ostringstream out;
  write_csv({{"bump", s}}, out);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "fixture,kind,label,norm,tail,flagged");
  int rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    CHECK(line.rfind("\"bump\",iterate,", 0) == 0);
  }
  CHECK(rows == 3);
}
