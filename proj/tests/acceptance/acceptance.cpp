// Acceptance run: one PASS/FAIL line per criterion, non-zero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "../support/generators.hpp"
#include "roumieu/error.hpp"
#include "roumieu/numerics.hpp"
#include "roumieu/sequences.hpp"
#include "roumieu/symbol_analysis.hpp"
#include "roumieu/symbols.hpp"
#include "roumieu/verify.hpp"
#include "roumieu/weights.hpp"

using namespace roumieu;

namespace {

const std::string kFixtures = ROUMIEU_FIXTURES;
const std::string kCli = ROUMIEU_CLI_PATH;

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + std::string("failed: ") + what;
    }
  }
  void note(const std::string& s) { detail += (detail.empty() ? "" : "; ") + s; }
};

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(6);
  s << v;
  return s.str();
}

SymbolPolynomial mono(std::vector<int> e, Complex c = 1.0) { return SymbolPolynomial::monomial(MultiIndex(e), c); }
SymbolPolynomial laplacian() { return mono({2, 0}) + mono({0, 2}); }
SymbolPolynomial heat() { return mono({2, 0}) + mono({0, 1}, Complex(0, 1)); }
SymbolPolynomial wave() { return mono({2, 0}) - mono({0, 2}); }

int failures = 0;

void criterion(int id, const std::string& name, double limit_seconds, const std::function<void(Outcome&)>& body) {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.require(false, std::string("exception: ") + e.what());
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  o.require(secs < limit_seconds, "runtime " + fmt(secs) + " s exceeds " + fmt(limit_seconds) + " s");
  if (!o.pass) ++failures;
  std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << id << ": " << name << " [" << fmt(secs) << " s] "
            << o.detail << std::endl;
}

// 1 -------------------------------------------------------------------------

void strength_oracle(Outcome& o) {
  gen::Rng rng(20240611);
  double worst = 0.0;
  for (int s = 0; s < 50; ++s) {
    const auto n = static_cast<std::size_t>(gen::integer(rng, 1, 3));
    const int m = gen::integer(rng, 1, 4);
    const auto q = gen::symbol(rng, n, m);
    for (int k = 0; k < 20; ++k) {
      const auto xi = gen::point(rng, n, 10.0);
      double brute = 0.0;
      for (const auto& alpha : multi_indices_up_to(n, m)) brute += std::norm(eval(derive(q, alpha), xi));
      const double got = p_tilde(q, xi);
      worst = std::max(worst, std::abs(got * got - brute) / brute);
    }
  }
  o.note("max relative error " + fmt(worst));
  o.require(worst <= 1e-10, "relative error <= 1e-10");
}

// 2 -------------------------------------------------------------------------

void exponent_estimation(Outcome& o) {
  auto snapped_to = [&](const std::string& label, const SymbolPolynomial& q, std::int64_t d, double tol) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto r = estimate_d(q);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    o.require(secs < 10.0, label + " runtime < 10 s");
    o.require(r.d_estimate.has_value(), label + " has an estimate");
    if (!r.d_estimate) return;
    o.note(label + " d=" + fmt(*r.d_estimate));
    o.require(std::abs(*r.d_estimate - static_cast<double>(d)) <= tol, label + " estimate within tolerance");
    o.require(r.d_rational && r.d_rational->first == d && r.d_rational->second == 1, label + " snaps to " +
                                                                                         std::to_string(d));
  };
  snapped_to("xi1^2+xi2^2", laplacian(), 1, 0.05);
  snapped_to("xi1^2+xi2^2+xi1", laplacian() + mono({1, 0}), 1, 0.05);
  snapped_to("xi1^2+i*xi2", heat(), 2, 0.2);

  const auto t0 = std::chrono::steady_clock::now();
  const auto w = estimate_d(wave());
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  o.require(secs < 10.0, "wave runtime < 10 s");
  o.require(w.verdict == HypoVerdict::violated, "wave verdict violated");
  o.require(w.witness.has_value(), "wave witness present");
  if (w.witness) {
    const auto& th = w.witness->direction;
    double best = INFINITY;
    for (double s1 : {-1.0, 1.0})
      for (double s2 : {-1.0, 1.0}) {
        const double dot = (s1 * th[0] + s2 * th[1]) / std::sqrt(2.0);
        best = std::min(best, std::acos(std::clamp(dot, -1.0, 1.0)));
      }
    o.note("wave witness angular distance " + fmt(best));
    o.require(best <= 1e-2, "wave witness within 1e-2 of a characteristic direction");
  }
}

// 3 -------------------------------------------------------------------------

void sequence_suite(Outcome& o) {
  for (double s : {1.0, 2.0, 3.0}) {
    const auto r = check_basic(RoumieuSequence::gevrey(s), 60);
    const std::string tag = "gevrey(" + fmt(s) + ")";
    o.require(r.h1.pass, tag + " log-convexity");
    o.require(r.root_monotone.pass, tag + " monotone roots");
    o.require(r.h3_left.pass, tag + " binomial stability");
    o.require(r.h3_right_h <= std::pow(2.0, s) + 1e-6, tag + " H <= 2^s");
  }
  const double b = fit_power_bound(RoumieuSequence::gevrey(1), 2, 1, 60);
  o.note("power bound B=" + fmt(b));
  o.require(b >= 3.4 && b <= 4.0, "power bound in [3.4, 4]");
  const auto in = fit_inclusion(RoumieuSequence::gevrey(1), RoumieuSequence::gevrey(2), 60);
  o.require(in.holds && std::abs(in.l - 1.0) <= 1e-12 && std::abs(in.c - 1.0) <= 1e-12,
            "gevrey(1) in gevrey(2) with L=1, C=1");
  const auto out = fit_inclusion(RoumieuSequence::gevrey(2), RoumieuSequence::gevrey(1), 60);
  o.require(!out.holds, "gevrey(2) in gevrey(1) diverges");
}

// 4 -------------------------------------------------------------------------

void weight_suite(Outcome& o) {
  const auto h = WeightFunction::one_plus_norm(2);
  for (double delta : {0.1, 1.0}) {
    std::vector<double> zero{0.0, 0.0};
    const double h0 = h_delta(h, delta, zero).value;
    o.require(std::abs(h0 - (1.0 + delta)) <= 1e-6, "h_delta(0) = 1 + delta at delta=" + fmt(delta));
    for (int j : {2, 3}) {
      const auto r = verify_lemma1(h, delta, j, {}, std::make_pair(1.0, 1.0));
      o.require(r.lower_margin >= 0.0 && r.upper_margin >= 0.0,
                "1+|xi| sandwich margins >= 0 (delta=" + fmt(delta) + ")");
      o.require(r.power_residual <= 1e-9, "1+|xi| power identity residual <= 1e-9 (j=" + std::to_string(j) + ")");
    }
  }
  const auto pt = WeightFunction::p_tilde_of(laplacian());
  for (double delta : {0.1, 1.0}) {
    const auto r = verify_lemma1(pt, delta, 2);
    o.require(r.sandwich_pass && r.lower_margin >= -1e-6 && r.upper_margin >= -1e-6,
              "strength weight sandwich (delta=" + fmt(delta) + ")");
    o.require(r.power_residual <= 1e-6, "strength weight power identity (delta=" + fmt(delta) + ")");
  }
}

// 5 -------------------------------------------------------------------------

double rel_l2(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    num += std::norm(a[i] - b[i]);
    den += std::norm(b[i]);
  }
  return std::sqrt(num / den);
}

double closed_bump(const std::vector<double>& x, const std::vector<double>& c, double w, const BoxDomain& cell) {
  double r2 = 0.0, cut = 1.0;
  const auto mid = cell.center();
  for (std::size_t j = 0; j < x.size(); ++j) {
    r2 += (x[j] - c[j]) * (x[j] - c[j]);
    const double t = (x[j] - mid[j]) / (cell.side(j) / 2);
    cut *= std::abs(t) < 1.0 ? std::exp(1.0 - 1.0 / (1.0 - t * t)) : 0.0;
  }
  return std::exp(-r2 / (2 * w * w)) * cut;
}

void numerics_oracles(Outcome& o) {
  const BoxDomain cell({-0.75, -0.75}, {0.75, 0.75});
  const auto unit = WeightFunction::constant(2, 1.0);
  double plancherel = 0.0;
  for (int res : {64, 128})
    for (double w : {0.05, 0.1, 0.2})
      for (const auto& f : {Fixture::gaussian_bump({}, w), Fixture::gaussian_bump({0.1, -0.05}, w, {4, -3}),
                            Fixture::polynomial_bump({}, w)}) {
        const auto u = sample(f, GridSpec{cell, res});
        const double a = cell_l2(u);
        plancherel = std::max(plancherel, std::abs(weighted_norm(u, unit, 2.0) - a) / a);
      }
  o.note("Plancherel " + fmt(plancherel));
  o.require(plancherel <= 1e-6, "Plancherel within 1e-6");

  const GridSpec g64{cell, 64};
  const std::vector<int> k{5, -3};
  const auto pw = sample(Fixture::plane_wave(k), g64);
  const auto q = heat() + mono({1, 1}, Complex(0.5, -2.0));
  const std::vector<double> kt{g64.frequency(0, k[0]), g64.frequency(1, k[1])};
  const Complex lambda = eval(q, kt);
  std::vector<Complex> expect(pw.size());
  for (std::size_t i = 0; i < pw.size(); ++i) expect[i] = lambda * pw[i];
  const double eig = rel_l2(apply_operator(q, pw).value.samples(), expect);
  o.note("eigenfunction " + fmt(eig));
  o.require(eig <= 1e-10, "plane-wave eigenfunction within 1e-10");

  const BoxDomain unit_interval({0}, {1});
  const GridSpec g1{unit_interval, 128};
  const GridFunction one(g1, std::vector<Complex>(g1.size(), Complex(1.0)));
  const double rl = restricted_l2(one, unit_interval, 1.0 / 3.0);
  o.note("restricted_l2 " + fmt(rl));
  o.require(std::abs(rl - std::sqrt(1.0 / 3.0)) <= 2.0 / 128, "restricted_l2 within 2/resolution");
  const double sn = shrink_norm(one, unit_interval, 1.0, 0.5);
  o.note("shrink_norm " + fmt(sn));
  o.require(std::abs(sn - std::pow(3.0, -1.5)) <= 1e-3, "shrink_norm within 1e-3");

  const GridSpec g128{cell, 128};
  const std::vector<double> c{0.05, -0.02};
  const double w = 0.1, h = 1e-3;
  const auto u = sample(Fixture::gaussian_bump(c, w), g128);
  std::vector<Complex> fd(u.size());
  for (std::size_t i = 0; i < fd.size(); ++i) {
    const auto x = g128.node(i);
    double lap = 0.0;
    for (std::size_t j = 0; j < 2; ++j) {
      auto at = [&](double s) {
        auto y = x;
        y[j] += s * h;
        return closed_bump(y, c, w, cell);
      };
      lap += (-at(2) + 16 * at(1) - 30 * at(0) + 16 * at(-1) - at(-2)) / (12 * h * h);
    }
    fd[i] = -lap;
  }
  const double fderr = rel_l2(apply_operator(laplacian(), u).value.samples(), fd);
  o.note("Laplacian vs FD " + fmt(fderr));
  o.require(fderr <= 1e-4, "spectral Laplacian within 1e-4 of finite differences");
}

// 6 -------------------------------------------------------------------------

std::vector<FixtureSample> gaussian_fixtures(const BoxDomain& omega, int res) {
  std::vector<Fixture> f;
  for (double w : {0.05, 0.1, 0.2}) f.push_back(Fixture::gaussian_bump({}, w));
  return sample_fixtures(f, default_grid(omega, res));
}

std::string case_key(const EstimateCase& c) { return c.fixture + "|" + c.parameters.dump(); }

void derivative_estimate(Outcome& o) {
  const BoxDomain omega({-0.5, -0.5}, {0.5, 0.5});
  const std::vector<double> deltas{0.05, 0.1, 0.2};
  const RationalExponent d(2, 1);
  const auto r128 = verify_prop31(heat(), d, gaussian_fixtures(omega, 128), omega, 3, deltas);
  const auto r64 = verify_prop31(heat(), d, gaussian_fixtures(omega, 64), omega, 3, deltas);
  bool margins = true;
  for (const auto& c : r128.proof.cases)
    if (!c.flagged && c.margin < -kMarginTolerance * std::abs(c.rhs)) margins = false;
  o.require(r128.pass && margins, "all unflagged margins >= 0 at resolution 128");
  o.note("C128=" + fmt(r128.proof.fitted_constant) + " flagged " + std::to_string(r128.proof.flagged_cases.size()) +
         "/" + std::to_string(r128.proof.cases.size()));

  // Compare on the cases resolved at both resolutions.
  std::map<std::string, const EstimateCase*> at64;
  for (const auto& c : r64.proof.cases)
    if (!c.flagged) at64[case_key(c)] = &c;
  std::vector<EstimateCase> common64, common128;
  for (const auto& c : r128.proof.cases) {
    if (c.flagged) continue;
    const auto it = at64.find(case_key(c));
    if (it == at64.end()) continue;
    common128.push_back(c);
    common64.push_back(*it->second);
  }
  o.require(!common64.empty(), "cases resolved at both resolutions exist");
  if (common64.empty()) return;
  const double c64 = finalize_estimate("64", common64).fitted_constant;
  const double c128 = finalize_estimate("128", common128).fitted_constant;
  const double drift = std::abs(c64 - c128) / std::max(c64, c128);
  o.note("shared cases " + std::to_string(common64.size()) + ", C64=" + fmt(c64) + " C128=" + fmt(c128) +
         " drift " + fmt(drift));
  o.require(std::isfinite(c64) && std::isfinite(c128) && drift <= 0.3, "constant stable within 30%");
}

// 7 -------------------------------------------------------------------------

void growth_chain(Outcome& o) {
  const BoxDomain omega({-0.5, -0.5}, {0.5, 0.5});
  const auto u = sample(Fixture::gaussian_bump({}, 0.1), default_grid(omega, 128));
  const auto g1 = RoumieuSequence::gevrey(1);
  const auto r = verify_th1(u, laplacian(), g1, RationalExponent(1, 1), omega, 0.0, 6, 12);
  o.note("vector C=" + fmt(r.vector_fit.constant) + " slope " + fmt(r.vector_tail_slope) + ", space C=" +
         fmt(r.space_fit.constant) + " slope " + fmt(r.space_tail_slope));
  o.require(std::isfinite(r.vector_fit.constant) && std::isfinite(r.space_fit.constant), "both fits finite");
  o.require(r.vector_tail_slope <= 0.0 && r.space_tail_slope <= 0.0, "residual tail slopes <= 0");
  o.require(r.pass, "chain verdict pass");

  o.require(fit_inclusion(g1, g1, 60).holds, "inclusion holds for (gevrey(1), 1)");
  o.require(!fit_inclusion(power_sequence(g1, 2.0), g1, 60).holds, "inclusion diverges for (gevrey(1), 2)");
  std::string name;
  try {
    verify_th1(u, heat(), g1, RationalExponent(2, 1), omega, 0.0, 6, 12);
  } catch (const PreconditionFailed& e) {
    name = e.name();
  }
  o.require(name == "factorial-inclusion", "d=2 run rejected by the inclusion precondition");
}

// 8 -------------------------------------------------------------------------

void constant_strength(Outcome& o) {
  const auto p = read_variable_file(kFixtures + "/variable_cs.json");
  const auto s = check_constant_strength(p);
  o.require(s.verdict == StrengthVerdict::constant_strength, "D1^2+D2^2+x1 D1 has constant strength");

  const BoxDomain region({-0.5, -0.5}, {0.5, 0.5});
  std::vector<double> a;
  for (int res : {64, 128}) {
    const auto fx = sample_fixtures({Fixture::gaussian_bump({}, 0.1)}, default_grid(region, res));
    const auto r = verify_domination(p, {0.0, 0.0}, fx, 3, region, 0.0);
    a.push_back(r.fitted_constant);
  }
  const double drift = std::abs(a[0] - a[1]) / std::max(a[0], a[1]);
  o.note("A64=" + fmt(a[0]) + " A128=" + fmt(a[1]));
  o.require(std::isfinite(a[0]) && std::isfinite(a[1]) && drift <= 0.3, "A finite and stable within 30%");

  const auto deg = read_variable_file(kFixtures + "/variable_degenerate.json");
  const auto sd = check_constant_strength(deg);
  o.require(sd.verdict == StrengthVerdict::not_constant_strength, "x1 D1^2 fails constant strength");
  o.require(sd.witness && sd.witness->x && std::abs((*sd.witness->x)[0]) <= 0.1, "witness near x1 = 0");
  if (sd.witness && sd.witness->x) o.note("degenerate witness x1=" + fmt((*sd.witness->x)[0]));
}

// 9 -------------------------------------------------------------------------

int shell(const std::string& cmd) {
  const int raw = std::system(cmd.c_str());
  return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void cli_contract(Outcome& o) {
  const auto dir = std::filesystem::temp_directory_path() / "roumieu_acceptance";
  std::filesystem::create_directories(dir);
  const std::vector<std::pair<std::string, std::string>> commands{
      {"analyze", "analyze --symbol " + kFixtures + "/heat.json"},
      {"seq-check", "seq-check --table " + kFixtures + "/constant_table.txt"},
      {"verify", "verify --check prop31 --config " + kFixtures + "/verify_prop31.json"}};
  for (const auto& [name, args] : commands) {
    std::string reports[2];
    for (int i = 0; i < 2; ++i) {
      const auto path = dir / (name + std::to_string(i) + ".json");
      std::filesystem::remove(path);
      const int code = shell(kCli + " " + args + " --out " + path.string() + " 2>/dev/null");
      o.require(code == 0, name + " exits 0");
      reports[i] = slurp(path);
    }
    o.require(!reports[0].empty() && reports[0] == reports[1], name + " reports byte-identical");
  }
  o.require(shell(kCli + " analyze --symbol " + kFixtures + "/truncated.json >/dev/null 2>&1") == 2,
            "malformed symbol exits 2");
  const auto errfile = dir / "th1.err";
  const int code = shell(kCli + " verify --check th1 --config " + kFixtures +
                         "/verify_th1_inclusion_fails.json >/dev/null 2>" + errfile.string());
  const auto err = slurp(errfile);
  o.require(code == 2, "violated inclusion exits 2");
  o.require(err.find("factorial-inclusion") != std::string::npos, "diagnostic names the precondition");
  std::filesystem::remove_all(dir);
}

}  // namespace

int main() {
  criterion(1, "strength function oracle equivalence", 5, strength_oracle);
  criterion(2, "hypoellipticity exponent estimation", 40, exponent_estimation);
  criterion(3, "defining sequence suite", 1, sequence_suite);
  criterion(4, "temperate weight sandwich and power identity", 5, weight_suite);
  criterion(5, "spectral numerics oracles", 60, numerics_oracles);
  criterion(6, "derivative estimate for the heat symbol", 60, derivative_estimate);
  criterion(7, "Roumieu growth chain for the Laplacian", 120, growth_chain);
  criterion(8, "constant strength and frozen-operator domination", 60, constant_strength);
  criterion(9, "CLI contract", 120, cli_contract);
  std::cout << (failures == 0 ? "ALL PASS" : std::to_string(failures) + " FAILED") << std::endl;
  return failures == 0 ? 0 : 1;
}
