#include "roumieu/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>

#include "roumieu/error.hpp"
#include "roumieu/numerics.hpp"
#include "roumieu/sequences.hpp"
#include "roumieu/symbol_analysis.hpp"
#include "roumieu/verify.hpp"

namespace roumieu {

namespace {

using json = nlohmann::json;
namespace fs = std::filesystem;

struct Common {
  std::string out_path;
  std::string csv_path;
  std::uint64_t seed = 0;
};

struct Outcome {
  json config;
  json results;
  json witnesses = json::array();
  std::vector<std::pair<std::string, NormSweep>> sweeps;
  int exit_code = kExitOk;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--out", c.out_path, "Report path (default: standard output)");
  cmd->add_option("--csv", c.csv_path, "CSV export of norm sweeps");
  cmd->add_option("--seed", c.seed, "Seed for randomized direction sets")->capture_default_str();
}

// ---- analyze ---------------------------------------------------------------

struct AnalyzeArgs {
  std::string symbol;
  std::optional<int> rays;
  std::optional<int> radii;
};

Outcome run_analyze(const AnalyzeArgs& a, const Common& c) {
  const auto q = read_symbol_file(a.symbol);
  RayConfig cfg;
  cfg.seed = c.seed;
  if (a.rays) cfg.directions = *a.rays;
  if (a.radii) cfg.radii = *a.radii;
  cfg.validate(q.dimension());
  const auto rep = estimate_d(q, cfg);
  Outcome o;
  o.config = {{"symbol-file", a.symbol}, {"symbol", to_json(q)}, {"rays", to_json(cfg)}};
  o.results = to_json(rep);
  if (rep.witness) o.witnesses.push_back(o.results["witness"]);
  return o;
}

// ---- seq-check -------------------------------------------------------------

struct SeqArgs {
  std::optional<double> gevrey;
  std::string table;
  std::int64_t pmax = 60;
  std::int64_t h4_m = 2;
  double inclusion_d = 1.0;
};

Outcome run_seq_check(const SeqArgs& a, const Common&) {
  if (a.gevrey.has_value() == !a.table.empty())
    throw InvalidArgument("seq-check needs exactly one of --gevrey or --table");
  const auto m = a.gevrey ? RoumieuSequence::gevrey(*a.gevrey) : read_table_file(a.table);
  if (a.h4_m < 1) throw InvalidArgument("--h4-m must be >= 1");
  auto rep = check_basic(m, a.pmax);
  rep.h4_b = fit_power_bound(m, a.h4_m, 1, a.pmax);
  rep.inclusion = fit_inclusion(power_sequence(RoumieuSequence::gevrey(1.0), a.inclusion_d), m, a.pmax);
  Outcome o;
  o.config = {{"sequence", m.describe()}, {"pmax", a.pmax}, {"h4-m", a.h4_m}, {"inclusion-d", a.inclusion_d}};
  if (!a.table.empty()) o.config["table-file"] = a.table;
  o.results = to_json(rep);
  o.results["pass"] = rep.h1.pass && rep.root_monotone.pass && rep.h3_left.pass;
  for (const auto* name : {"h1", "root_monotone", "h3_left"}) {
    const auto& node = o.results[name];
    if (!node["pass"].get<bool>()) o.witnesses.push_back({{"condition", name}, {"at", node}});
  }
  if (rep.inclusion && rep.inclusion->witness_p)
    o.witnesses.push_back({{"condition", "inclusion"}, {"p", *rep.inclusion->witness_p}});
  return o;
}

// ---- strength --------------------------------------------------------------

struct StrengthArgs {
  std::string p;
  std::string q;
  std::string variable;
  int points = 3;
};

Outcome run_strength(const StrengthArgs& a, const Common& c) {
  RayConfig cfg;
  cfg.seed = c.seed;
  Outcome o;
  StrengthReport rep;
  if (!a.variable.empty()) {
    if (!a.p.empty() || !a.q.empty()) throw InvalidArgument("--variable excludes --p/--q");
    const auto op = read_variable_file(a.variable);
    rep = check_constant_strength(op, cfg, a.points);
    o.config = {{"variable-file", a.variable}, {"operator", to_json(op)}, {"points", a.points}};
  } else {
    if (a.p.empty() || a.q.empty()) throw InvalidArgument("strength needs --p and --q, or --variable");
    const auto p = read_symbol_file(a.p);
    const auto q = read_symbol_file(a.q);
    rep = equally_strong(p, q, cfg);
    o.config = {{"p-file", a.p}, {"q-file", a.q}, {"p", to_json(p)}, {"q", to_json(q)}};
  }
  o.config["rays"] = to_json(cfg);
  o.results = to_json(rep);
  if (rep.witness) o.witnesses.push_back(o.results["witness"]);
  return o;
}

// ---- verify ----------------------------------------------------------------

struct VerifyArgs {
  std::string check;
  std::string config;
  std::optional<int> resolution;
  std::optional<int> kmax;
  std::optional<int> lmax;
  std::optional<std::int64_t> pmax;
};

class ConfigReader {
 public:
  explicit ConfigReader(const std::string& path)
      : doc_(read_json_file(path)), base_(fs::path(path).parent_path()) {
    if (!doc_.is_object()) throw ParseError("config must be a JSON object");
  }

  const json& doc() const { return doc_; }
  bool has(const char* key) const { return doc_.contains(key); }

  const json& node(const char* key) const {
    if (!doc_.contains(key)) throw ParseError(std::string("config is missing '") + key + "'");
    return doc_[key];
  }

  std::string path(const json& v) const {
    const fs::path p(v.get<std::string>());
    return (p.is_absolute() ? p : base_ / p).string();
  }

  SymbolPolynomial symbol(const char* key) const {
    const auto& v = node(key);
    return v.is_string() ? read_symbol_file(path(v)) : symbol_from_json(v);
  }

  VariableOperator variable(const char* key) const {
    const auto& v = node(key);
    return v.is_string() ? read_variable_file(path(v)) : variable_from_json(v);
  }

  RoumieuSequence sequence(const char* key) const {
    const auto& v = node(key);
    if (!v.is_object()) throw ParseError("sequence must be an object");
    if (v.contains("gevrey") && v["gevrey"].is_number()) return RoumieuSequence::gevrey(v["gevrey"].get<double>());
    if (v.contains("table") && v["table"].is_string()) return read_table_file(path(v["table"]));
    throw ParseError("sequence needs 'gevrey': s or 'table': path");
  }

  RationalExponent exponent() const {
    const auto& v = node("d");
    if (v.is_number_integer()) return RationalExponent(v.get<std::int64_t>(), 1);
    if (v.is_array() && v.size() == 2 && v[0].is_number_integer() && v[1].is_number_integer())
      return RationalExponent(v[0].get<std::int64_t>(), v[1].get<std::int64_t>());
    throw ParseError("'d' must be an integer or [mu, nu]");
  }

  double number(const char* key, double fallback) const {
    if (!doc_.contains(key)) return fallback;
    if (!doc_[key].is_number()) throw ParseError(std::string("'") + key + "' must be a number");
    return doc_[key].get<double>();
  }

  int integer(const char* key, int fallback) const {
    if (!doc_.contains(key)) return fallback;
    if (!doc_[key].is_number_integer()) throw ParseError(std::string("'") + key + "' must be an integer");
    return doc_[key].get<int>();
  }

  std::vector<double> numbers(const char* key, std::vector<double> fallback) const {
    if (!doc_.contains(key)) return fallback;
    std::vector<double> out;
    if (!doc_[key].is_array()) throw ParseError(std::string("'") + key + "' must be an array");
    for (const auto& v : doc_[key]) {
      if (!v.is_number()) throw ParseError(std::string("'") + key + "' must hold numbers");
      out.push_back(v.get<double>());
    }
    return out;
  }

  bool flag(const char* key, bool fallback) const {
    if (!doc_.contains(key)) return fallback;
    if (!doc_[key].is_boolean()) throw ParseError(std::string("'") + key + "' must be a boolean");
    return doc_[key].get<bool>();
  }

 private:
  json doc_;
  fs::path base_;
};

std::vector<Fixture> default_fixtures(const BoxDomain& region) {
  std::vector<Fixture> out;
  for (double w : {0.05, 0.1, 0.2}) out.push_back(Fixture::gaussian_bump(region.center(), w));
  return out;
}

std::vector<Fixture> read_fixtures(const ConfigReader& cfg, const BoxDomain& region) {
  if (!cfg.has("fixtures")) return default_fixtures(region);
  const auto& v = cfg.node("fixtures");
  if (!v.is_array() || v.empty()) throw ParseError("'fixtures' must be a nonempty array");
  std::vector<Fixture> out;
  for (const auto& f : v) out.push_back(fixture_from_json(f));
  return out;
}

GridSpec read_grid(const ConfigReader& cfg, const BoxDomain& region, const VerifyArgs& a) {
  int resolution = 64;
  double inflation = 1.5;
  if (cfg.has("grid")) {
    const auto& g = cfg.node("grid");
    if (!g.is_object()) throw ParseError("'grid' must be an object");
    if (g.contains("resolution")) {
      if (!g["resolution"].is_number_integer()) throw ParseError("grid 'resolution' must be an integer");
      resolution = g["resolution"].get<int>();
    }
    if (g.contains("inflation")) {
      if (!g["inflation"].is_number()) throw ParseError("grid 'inflation' must be a number");
      inflation = g["inflation"].get<double>();
    }
  }
  if (a.resolution) resolution = *a.resolution;
  return default_grid(region, resolution, inflation);
}

json fixtures_json(const std::vector<Fixture>& fx) {
  json out = json::array();
  for (const auto& f : fx) out.push_back(to_json(f));
  return out;
}

void add_estimate_witness(Outcome& o, const EstimateReport& r) {
  if (r.witness) o.witnesses.push_back({{"check", r.check}, {"case", to_json(r.cases[*r.witness])}});
}

Outcome run_verify(const VerifyArgs& a, const Common& c) {
  const ConfigReader cfg(a.config);
  RayConfig rays;
  rays.seed = c.seed;
  Outcome o;
  o.config = {{"check", a.check}, {"config-file", a.config}, {"rays", to_json(rays)}};

  if (a.check == "domination") {
    const auto op = cfg.variable("operator");
    const BoxDomain region = cfg.has("region") ? box_from_json(cfg.node("region")) : op.domain();
    const auto grid = read_grid(cfg, region, a);
    const auto fixtures = read_fixtures(cfg, region);
    const auto x0 = cfg.numbers("x0", op.domain().center());
    const int lmax = a.lmax.value_or(cfg.integer("lmax", 3));
    const double delta = cfg.number("delta", 0.0);
    const auto rep = verify_domination(op, x0, sample_fixtures(fixtures, grid), lmax, region, delta, rays);
    o.config.update({{"operator", to_json(op)}, {"region", to_json(region)}, {"grid", to_json(grid)},
                     {"fixtures", fixtures_json(fixtures)}, {"x0", x0}, {"lmax", lmax}, {"delta", delta}});
    o.results = to_json(rep);
    add_estimate_witness(o, rep);
    o.exit_code = rep.pass ? kExitOk : kExitVerifyFail;
    return o;
  }

  const auto q = cfg.symbol("symbol");
  const auto d = cfg.exponent();
  const BoxDomain region = box_from_json(cfg.node("region"));
  const auto grid = read_grid(cfg, region, a);
  const auto fixtures = read_fixtures(cfg, region);
  const auto samples = sample_fixtures(fixtures, grid);
  o.config.update({{"symbol", to_json(q)}, {"d", {d.mu(), d.nu()}}, {"region", to_json(region)},
                   {"grid", to_json(grid)}, {"fixtures", fixtures_json(fixtures)}});

  if (a.check == "p1") {
    const auto r = cfg.symbol("r");
    const double t = cfg.number("t", 0.2);
    P1Options opt;
    opt.rays = rays;
    opt.normalize_diameter = cfg.flag("normalize-diameter", true);
    const auto rep = verify_p1(q, r, d, samples, region, t, opt);
    o.config.update({{"r", to_json(r)}, {"t", t}, {"normalize-diameter", opt.normalize_diameter}});
    o.results = to_json(rep);
    add_estimate_witness(o, rep);
    o.exit_code = rep.pass ? kExitOk : kExitVerifyFail;
  } else if (a.check == "prop31") {
    const int kmax = a.kmax.value_or(cfg.integer("kmax", 3));
    const auto deltas = cfg.numbers("deltas", {0.05, 0.1, 0.2});
    const auto rep = verify_prop31(q, d, samples, region, kmax, deltas, rays);
    o.config.update({{"kmax", kmax}, {"deltas", deltas}});
    o.results = to_json(rep);
    add_estimate_witness(o, rep.statement);
    add_estimate_witness(o, rep.proof);
    o.exit_code = rep.pass ? kExitOk : kExitVerifyFail;
  } else if (a.check == "th1") {
    const auto m = cfg.sequence("sequence");
    const int lmax = a.lmax.value_or(cfg.integer("lmax", 6));
    const int amax = cfg.integer("amax", 12);
    const double delta = cfg.number("delta", 0.0);
    const std::int64_t pmax = a.pmax.value_or(cfg.integer("pmax", 60));
    o.config.update({{"sequence", m.describe()}, {"lmax", lmax}, {"amax", amax}, {"delta", delta}, {"pmax", pmax}});
    json per = json::array();
    bool pass = true;
    for (const auto& s : samples) {
      const auto rep = verify_th1(s.u, q, m, d, region, delta, lmax, amax, rays, pmax);
      pass = pass && rep.pass;
      per.push_back({{"fixture", s.id}, {"report", to_json(rep)}});
      o.sweeps.emplace_back(s.id, rep.vector_fit.sweep);
      o.sweeps.emplace_back(s.id, rep.space_fit.sweep);
      o.witnesses.push_back({{"fixture", s.id},
                             {"vector-argmax", rep.vector_fit.argmax ? json(*rep.vector_fit.argmax) : json(nullptr)},
                             {"space-argmax", rep.space_fit.argmax ? json(*rep.space_fit.argmax) : json(nullptr)}});
    }
    o.results = {{"fixtures", per}, {"verdict", pass ? "pass" : "fail"}};
    o.exit_code = pass ? kExitOk : kExitVerifyFail;
  } else {
    throw InvalidArgument("unknown check '" + a.check + "'");
  }
  return o;
}

void emit(const std::string& command, const Outcome& o, const Common& c, std::ostream& out) {
  json report = {{"report-version", kReportVersion},
                 {"command", command},
                 {"config", o.config},
                 {"results", o.results},
                 {"witnesses", o.witnesses}};
  report["config"]["seed"] = c.seed;
  const std::string text = report.dump(2) + "\n";
  if (c.out_path.empty()) {
    out << text;
  } else {
    std::ofstream f(c.out_path, std::ios::binary);
    if (!f) throw InvalidArgument("cannot write report to '" + c.out_path + "'");
    f << text;
  }
  if (!c.csv_path.empty()) {
    std::ofstream f(c.csv_path, std::ios::binary);
    if (!f) throw InvalidArgument("cannot write CSV to '" + c.csv_path + "'");
    write_csv(o.sweeps, f);
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Roumieu regularity toolkit: symbol analysis, sequence checks and estimate verification", "roumieu"};
  app.require_subcommand(1);

  Common common;
  AnalyzeArgs analyze;
  auto* c_analyze = app.add_subcommand("analyze", "Estimate the hypoellipticity exponent of a symbol");
  c_analyze->add_option("--symbol", analyze.symbol, "Symbol JSON file")->required();
  c_analyze->add_option("--rays", analyze.rays, "Number of ray directions");
  c_analyze->add_option("--radii", analyze.radii, "Number of radii per ray");
  add_common(c_analyze, common);

  SeqArgs seq;
  auto* c_seq = app.add_subcommand("seq-check", "Check the defining-sequence conditions");
  auto* o_gev = c_seq->add_option("--gevrey", seq.gevrey, "Gevrey order s >= 1");
  auto* o_tab = c_seq->add_option("--table", seq.table, "Two-column table file");
  o_gev->excludes(o_tab);
  c_seq->add_option("--pmax", seq.pmax, "Largest index examined")->capture_default_str();
  c_seq->add_option("--h4-m", seq.h4_m, "Multiplier m in the power bound")->capture_default_str();
  c_seq->add_option("--inclusion-d", seq.inclusion_d, "Exponent d in the inclusion (p!)^d of M")
      ->capture_default_str();
  add_common(c_seq, common);

  StrengthArgs strength;
  auto* c_strength = app.add_subcommand("strength", "Compare operator strength");
  auto* o_p = c_strength->add_option("--p", strength.p, "Symbol JSON file P");
  auto* o_q = c_strength->add_option("--q", strength.q, "Symbol JSON file Q");
  auto* o_var = c_strength->add_option("--variable", strength.variable, "Variable-coefficient operator JSON file");
  o_var->excludes(o_p)->excludes(o_q);
  c_strength->add_option("--points", strength.points, "Freeze points per axis")->capture_default_str();
  add_common(c_strength, common);

  VerifyArgs verify;
  auto* c_verify = app.add_subcommand("verify", "Verify an a priori estimate on fixtures");
  c_verify->add_option("--check", verify.check, "Estimate to verify")
      ->required()
      ->check(CLI::IsMember({"p1", "prop31", "th1", "domination"}));
  c_verify->add_option("--config", verify.config, "Verification config JSON")->required();
  c_verify->add_option("--resolution", verify.resolution, "Grid points per axis");
  c_verify->add_option("--kmax", verify.kmax, "Largest k (prop31)");
  c_verify->add_option("--lmax", verify.lmax, "Largest iterate (th1, domination)");
  c_verify->add_option("--pmax", verify.pmax, "Largest sequence index (th1)");
  add_common(c_verify, common);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitInputError;
  }

  try {
    Outcome o;
    std::string command;
    if (c_analyze->parsed()) {
      command = "analyze";
      o = run_analyze(analyze, common);
    } else if (c_seq->parsed()) {
      command = "seq-check";
      o = run_seq_check(seq, common);
    } else if (c_strength->parsed()) {
      command = "strength";
      o = run_strength(strength, common);
    } else {
      command = "verify";
      o = run_verify(verify, common);
    }
    emit(command, o, common, out);
    return o.exit_code;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }
}

}  // namespace roumieu
