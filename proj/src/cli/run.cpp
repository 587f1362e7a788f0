#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "bmc/cli.hpp"
#include "bmc/errors.hpp"
#include "bmc/kernels.hpp"

namespace bmc::cli {

using nlohmann::json;

namespace {

enum class Kind { real, integer, seed, text, flag };

struct Key {
  const char* name;
  Kind kind;
  const char* help;
};

const std::vector<Key>& all_keys() {
  static const std::vector<Key> keys = {
      {"a", Kind::real, "autoregressive coefficient (sets a0 = a1)"},
      {"a0", Kind::real, "coefficient of the first child"},
      {"a1", Kind::real, "coefficient of the second child"},
      {"b0", Kind::real, "drift of the first child"},
      {"b1", Kind::real, "drift of the second child"},
      {"rho", Kind::real, "noise correlation between siblings"},
      {"sigma", Kind::real, "noise standard deviation"},
      {"n", Kind::integer, "tree depth (slopes: n_max)"},
      {"n_min", Kind::integer, "first depth used in the regression"},
      {"replicas", Kind::integer, "number of independent trees"},
      {"outer_repeats", Kind::integer, "independent repetitions of the slope fit"},
      {"f", Kind::text, "test function: x, x^p, constant or c0,c1,... (slopes: ';' separated)"},
      {"seed", Kind::seed, "master seed"},
      {"nu", Kind::text, "initial law: stationary, dirac:x0, gaussian:m,v"},
      {"target", Kind::text, "Gn or Tn (slopes: also both)"},
      {"normalization", Kind::text, "regime or mean"},
      {"regime", Kind::text, "auto, sub or crit"},
      {"shape", Kind::text, "single or tree"},
      {"tol", Kind::real, "relative tolerance of the series"},
      {"alphas", Kind::text, "grid lo:hi:step or comma list"},
      {"plot", Kind::flag, "write slopes.svg"},
      {"threads", Kind::integer, "worker threads (default BMC_LAB_THREADS or all cores)"},
      {"out", Kind::text, "output directory"},
  };
  return keys;
}

const Key& key_info(const std::string& name) {
  for (const auto& k : all_keys()) {
    if (name == k.name) return k;
  }
  throw ConfigError("unknown config key '" + name + "'");
}

struct Command {
  const char* name;
  const char* help;
  std::vector<std::string> keys;
  json defaults;
};

const std::vector<Command>& commands() {
  static const std::vector<std::string> bar = {"a", "a0", "a1", "b0", "b1", "rho", "sigma"};
  auto with = [](std::vector<std::string> base, std::initializer_list<const char*> more) {
    for (const char* m : more) base.emplace_back(m);
    return base;
  };
  const json run_defaults = {{"a", 0.5},        {"sigma", 1.0},    {"n", 10},
                             {"replicas", 100}, {"f", "x"},        {"seed", 1},
                             {"nu", "stationary"}, {"target", "Gn"}, {"threads", 0},
                             {"out", "."}};
  static const std::vector<Command> cmds = {
      {"simulate", "replicate the normalized statistic and write stats.csv",
       with(bar, {"n", "replicas", "f", "seed", "nu", "target", "normalization", "threads", "out"}),
       [&] {
         json d = run_defaults;
         d["normalization"] = "regime";
         return d;
       }()},
      {"variance", "evaluate the asymptotic variance series",
       {"a", "sigma", "f", "regime", "shape", "tol", "out"},
       {{"a", 0.5}, {"sigma", 1.0}, {"f", "x"}, {"regime", "auto"}, {"shape", "single"},
        {"tol", kDefaultVarianceTol}, {"out", ""}}},
      {"clt", "compare the replicated statistic with its Gaussian limit",
       with(bar, {"n", "replicas", "f", "seed", "nu", "target", "threads", "out"}),
       run_defaults},
      {"slopes", "fit the variance decay slope over a grid of rates",
       {"sigma", "n", "n_min", "replicas", "outer_repeats", "f", "seed", "nu", "target", "alphas",
        "plot", "threads", "out"},
       {{"sigma", 1.0}, {"n", 12}, {"n_min", 5}, {"replicas", 500}, {"outer_repeats", 20},
        {"f", "x"}, {"seed", 1}, {"nu", "stationary"}, {"target", "Gn"},
        {"alphas", "0.05:0.95:0.05"}, {"plot", false}, {"threads", 0}, {"out", "."}}},
      {"supercritical", "martingale limits and the tree to generation ratio",
       with(bar, {"n", "replicas", "f", "seed", "nu", "threads", "out"}),
       [&] {
         json d = run_defaults;
         d["a"] = 0.85;
         d.erase("target");
         return d;
       }()},
      {"martingale", "paths of (2a)^-n M_Gn(Rf)",
       with(bar, {"n", "replicas", "f", "seed", "nu", "threads", "out"}),
       [&] {
         json d = run_defaults;
         d.erase("target");
         return d;
       }()},
      {"check-assumptions", "integrability conditions for the symmetric kernel",
       {"a", "sigma", "out"},
       {{"a", 0.5}, {"sigma", 1.0}, {"out", ""}}},
  };
  return cmds;
}

std::string flag_name(const std::string& key) {
  std::string s = "--" + key;
  for (char& c : s) {
    if (c == '_') c = '-';
  }
  return s;
}

json convert(const Key& k, const std::string& raw) {
  const std::string what = std::string("--") + k.name;
  try {
    std::size_t used = 0;
    switch (k.kind) {
      case Kind::real: {
        const double v = std::stod(raw, &used);
        if (used != raw.size() || !std::isfinite(v)) break;
        return v;
      }
      case Kind::integer: {
        const long long v = std::stoll(raw, &used);
        if (used != raw.size()) break;
        return v;
      }
      case Kind::seed: {
        if (!raw.empty() && raw[0] == '-') break;
        const unsigned long long v = std::stoull(raw, &used, 0);
        if (used != raw.size()) break;
        return static_cast<std::uint64_t>(v);
      }
      case Kind::text:
        return raw;
      case Kind::flag:
        return raw == "true";
    }
  } catch (const std::exception&) {
  }
  throw ConfigError("invalid value '" + raw + "' for " + what);
}

void check_type(const Key& k, const json& v) {
  bool ok = false;
  switch (k.kind) {
    case Kind::real:
      ok = v.is_number();
      break;
    case Kind::integer:
      ok = v.is_number_integer();
      break;
    case Kind::seed:
      ok = v.is_number_unsigned() || (v.is_number_integer() && v.get<long long>() >= 0);
      break;
    case Kind::text:
      ok = v.is_string() || (std::string(k.name) == "f" && v.is_array()) ||
           (std::string(k.name) == "alphas" && v.is_array());
      break;
    case Kind::flag:
      ok = v.is_boolean();
      break;
  }
  if (!ok) throw ConfigError(std::string("config key '") + k.name + "' has the wrong type");
}

double real(const json& c, const char* key) { return c.at(key).get<double>(); }
int integer(const json& c, const char* key) {
  const long long v = c.at(key).get<long long>();
  if (v < -1000000000LL || v > 1000000000LL) throw ConfigError(std::string(key) + " out of range");
  return static_cast<int>(v);
}
std::string text(const json& c, const char* key) { return c.at(key).get<std::string>(); }

BarParams params_from(const json& c) {
  BarParams p;
  const double a = c.contains("a") ? real(c, "a") : 0.5;
  p.a0 = c.contains("a0") ? real(c, "a0") : a;
  p.a1 = c.contains("a1") ? real(c, "a1") : a;
  p.b0 = c.contains("b0") ? real(c, "b0") : 0.0;
  p.b1 = c.contains("b1") ? real(c, "b1") : 0.0;
  p.rho = c.contains("rho") ? real(c, "rho") : 0.0;
  p.sigma = real(c, "sigma");
  p.validate();
  return p;
}

std::vector<double> poly_from(const json& v) {
  if (v.is_array()) {
    std::vector<double> poly;
    for (const auto& x : v) {
      if (!x.is_number()) throw ConfigError("coefficient lists must be numeric");
      poly.push_back(x.get<double>());
    }
    if (poly.empty() || poly.size() > 9) throw ConfigError("coefficient lists hold 1 to 9 values");
    return poly;
  }
  return parse_test_function(v.get<std::string>());
}

Target target_from(const std::string& t) {
  if (t == "Gn") return Target::generation;
  if (t == "Tn") return Target::tree;
  throw ConfigError("target must be Gn or Tn");
}

ExperimentConfig experiment_from(const json& c) {
  ExperimentConfig e;
  e.params = params_from(c);
  e.nu = parse_initial_law(text(c, "nu"));
  e.f_poly = poly_from(c.at("f"));
  e.n = integer(c, "n");
  e.replicas = integer(c, "replicas");
  e.master_seed = c.at("seed").get<std::uint64_t>();
  if (c.contains("target")) e.target = target_from(text(c, "target"));
  if (c.contains("normalization")) {
    const std::string norm = text(c, "normalization");
    if (norm == "regime") {
      e.normalization = Normalization::regime;
    } else if (norm == "mean") {
      e.normalization = Normalization::mean;
    } else {
      throw ConfigError("normalization must be regime or mean");
    }
  }
  e.threads = integer(c, "threads");
  e.validate();
  return e;
}

class Outputs {
 public:
  explicit Outputs(std::string dir) : dir_(std::move(dir)) {}

  bool enabled() const { return !dir_.empty(); }

  std::ofstream open(const std::string& name) {
    std::filesystem::create_directories(dir_);
    const std::string path = (std::filesystem::path(dir_) / name).string();
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ConfigError("cannot write " + path);
    paths_.push_back(path);
    return f;
  }

  const std::vector<std::string>& paths() const { return paths_; }

 private:
  std::string dir_;
  std::vector<std::string> paths_;
};

void write_stats(Outputs& outs, const std::vector<double>& stats) {
  auto f = outs.open("stats.csv");
  f << "replica,statistic\n";
  for (std::size_t r = 0; r < stats.size(); ++r) f << r << ',' << fmt(stats[r]) << '\n';
}

void write_martingale(Outputs& outs, const MartingaleResult& m) {
  auto f = outs.open("martingale.csv");
  f << "n,mean,mean_se,l1_diff\n";
  for (std::size_t g = 0; g < m.mean.size(); ++g) {
    f << g << ',' << fmt(m.mean[g]) << ',' << fmt(m.mean_se[g]) << ','
      << (g < m.l1_diffs.size() ? fmt(m.l1_diffs[g]) : std::string()) << '\n';
  }
}

void cmd_simulate(const json& c, Outputs& outs, std::ostream& out) {
  const ExperimentConfig e = experiment_from(c);
  const std::vector<double> stats = replicate(e);
  write_stats(outs, stats);
  const SampleMoments m = sample_moments(stats);
  out << "mean " << fmt(m.mean) << "\nvariance " << fmt(m.variance) << '\n';
}

void cmd_variance(const json& c, Outputs& outs, std::ostream& out) {
  const BarSpectrum q(real(c, "a"), real(c, "sigma"));
  const SpectralFn f = q.monomial(poly_from(c.at("f")));
  const std::string shape = text(c, "shape");
  FunctionalSeq seq = FunctionalSeq::single(f);
  if (shape == "tree") {
    seq = FunctionalSeq::tree(f);
  } else if (shape != "single") {
    throw ConfigError("shape must be single or tree");
  }
  const RegimeTag tag = classify_regime(q.a());
  const std::string want = text(c, "regime");
  Regime regime = tag.regime;
  if (want == "sub") {
    regime = Regime::subcritical;
  } else if (want == "crit") {
    regime = Regime::critical;
  } else if (want != "auto") {
    throw ConfigError("regime must be auto, sub or crit");
  }
  if (regime != tag.regime) {
    throw NumericRejection(std::string("a is in the ") + to_string(tag.regime) +
                           " regime, not " + to_string(regime));
  }
  if (regime == Regime::supercritical) {
    throw NumericRejection("no variance series in the supercritical regime");
  }
  const double tol = real(c, "tol");
  const VarianceReport r =
      regime == Regime::subcritical ? sigma_sub(q, seq, tol) : sigma_crit(q, seq, tol);
  out << "regime " << to_string(regime) << "\nvalue " << fmt(r.value) << "\nsigma1 "
      << fmt(r.sigma1) << "\nsigma2 " << fmt(r.sigma2) << "\ntail_bound " << fmt(r.tail_bound)
      << "\nconverged " << (r.converged ? "true" : "false") << '\n';
  if (outs.enabled()) {
    json j = {{"regime", to_string(regime)},
              {"value", r.value},
              {"sigma1", r.sigma1},
              {"sigma2", r.sigma2},
              {"tail_bound", r.tail_bound},
              {"converged", r.converged},
              {"truncation",
               {{"k_max", r.truncation.k_max},
                {"l_max", r.truncation.l_max},
                {"r_max", r.truncation.r_max}}}};
    outs.open("variance.json") << j.dump(2) << '\n';
  }
}

void cmd_clt(const json& c, Outputs& outs, std::ostream& out) {
  const ExperimentConfig e = experiment_from(c);
  const CltResult r = clt_study(e);
  write_stats(outs, r.statistics);
  auto f = outs.open("clt.csv");
  f << "n,empirical_variance,series_variance,ks_distance,ks_threshold,mean,skewness,kurtosis\n";
  f << r.n << ',' << fmt(r.empirical_variance) << ',' << fmt(r.series_variance) << ','
    << (r.ks_skipped ? std::string() : fmt(r.ks_distance)) << ',' << fmt(r.ks_threshold) << ','
    << fmt(r.moments.mean) << ',' << fmt(r.moments.skewness) << ',' << fmt(r.moments.kurtosis)
    << '\n';
  out << "regime " << to_string(r.regime) << "\nempirical_variance " << fmt(r.empirical_variance)
      << "\nseries_variance " << fmt(r.series_variance) << "\nks_distance "
      << (r.ks_skipped ? std::string("skipped (point mass limit)") : fmt(r.ks_distance))
      << "\nks_threshold " << fmt(r.ks_threshold) << '\n';
}

std::vector<TestFunctionSpec> functions_from(const json& v) {
  std::vector<std::string> labels;
  if (v.is_array()) {
    for (const auto& x : v) {
      if (!x.is_string()) throw ConfigError("slopes expects f as a string or list of strings");
      labels.push_back(x.get<std::string>());
    }
  } else {
    std::istringstream in(v.get<std::string>());
    std::string part;
    while (std::getline(in, part, ';')) labels.push_back(part);
  }
  std::vector<TestFunctionSpec> fs;
  for (const auto& l : labels) fs.push_back({l, parse_test_function(l)});
  if (fs.empty()) throw ConfigError("slopes needs at least one test function");
  return fs;
}

void cmd_slopes(const json& c, Outputs& outs, std::ostream& out) {
  SlopeStudyConfig s;
  const json& grid = c.at("alphas");
  if (grid.is_array()) {
    for (const auto& x : grid) s.alphas.push_back(x.get<double>());
  } else {
    s.alphas = parse_grid(grid.get<std::string>());
  }
  s.functions = functions_from(c.at("f"));
  s.n_min = integer(c, "n_min");
  s.n_max = integer(c, "n");
  s.replicas = integer(c, "replicas");
  s.outer_repeats = integer(c, "outer_repeats");
  const std::string t = text(c, "target");
  if (t == "both") {
    s.targets = {Target::generation, Target::tree};
  } else {
    s.targets = {target_from(t)};
  }
  s.sigma = real(c, "sigma");
  s.nu = parse_initial_law(text(c, "nu"));
  s.master_seed = c.at("seed").get<std::uint64_t>();
  s.threads = integer(c, "threads");

  const std::vector<SlopeResult> rows = slope_study(s);
  {
    auto f = outs.open("slopes.csv");
    f << "alpha,target,n_min,n_max,slope,stderr,h1,h2,replicas,outer_repeat\n";
    for (const auto& r : rows) {
      f << fmt(r.alpha) << ',' << to_string(r.target) << ',' << r.n_min << ',' << r.n_max << ','
        << fmt(r.slope) << ',' << fmt(r.stderr_) << ',' << fmt(h1(r.alpha)) << ','
        << fmt(h2(r.alpha)) << ',' << r.replicas << ',' << r.outer_repeat << '\n';
    }
  }
  const std::vector<SlopeSummary> sums = summarize_slopes(rows);
  {
    auto f = outs.open("slopes_summary.csv");
    f << "alpha,target,f,mean_slope,sd_slope,count,h1,h2\n";
    for (const auto& r : sums) {
      f << fmt(r.alpha) << ',' << to_string(r.target) << ',' << r.f_label << ',' << fmt(r.mean)
        << ',' << fmt(r.sd) << ',' << r.count << ',' << fmt(h1(r.alpha)) << ','
        << fmt(h2(r.alpha)) << '\n';
    }
  }
  for (const auto& r : sums) {
    out << "alpha " << fmt(r.alpha) << " target " << to_string(r.target) << " f " << r.f_label
        << " slope " << fmt(r.mean) << " sd " << fmt(r.sd) << '\n';
  }
  for (const auto& r : rows) {
    for (int n : r.omitted) {
      out << "omitted alpha " << fmt(r.alpha) << " f " << r.f_label << " repeat "
          << r.outer_repeat << " n " << n << " (degenerate variance)\n";
    }
  }
  if (c.at("plot").get<bool>()) {
    std::vector<SlopeCurve> curves;
    for (const auto& spec : s.functions) {
      SlopeCurve curve{spec.label, {}, {}, {}};
      for (const auto& r : sums) {
        if (r.f_label != spec.label || r.target != s.targets.front()) continue;
        curve.alpha.push_back(r.alpha);
        curve.mean.push_back(r.mean);
        curve.sd.push_back(r.sd);
      }
      curves.push_back(std::move(curve));
    }
    const std::string title = std::string("log-variance slope, target ") +
                              to_string(s.targets.front()) + ", n = " +
                              std::to_string(s.n_min) + ".." + std::to_string(s.n_max);
    outs.open("slopes.svg") << slopes_svg(curves, title);
  }
}

void cmd_supercritical(const json& c, Outputs& outs, std::ostream& out) {
  const ExperimentConfig e = experiment_from(c);
  const SupercriticalResult r = supercritical_study(e);
  {
    auto f = outs.open("supercritical.csv");
    f << "replica,generation_limit,tree_limit\n";
    for (std::size_t i = 0; i < r.generation_limits.size(); ++i) {
      f << i << ',' << fmt(r.generation_limits[i]) << ',' << fmt(r.tree_limits[i]) << '\n';
    }
  }
  write_martingale(outs, r.martingale);
  out << "ratio_median " << fmt(r.ratio_median) << "\nexpected_ratio " << fmt(r.expected_ratio)
      << '\n';
  for (std::size_t g = 0; g < r.martingale_l1_diffs.size(); ++g) {
    out << "l1_diff " << g << ' ' << fmt(r.martingale_l1_diffs[g]) << '\n';
  }
}

void cmd_martingale(const json& c, Outputs& outs, std::ostream& out) {
  const ExperimentConfig e = experiment_from(c);
  const MartingaleResult m = martingale_study(e);
  write_martingale(outs, m);
  for (std::size_t g = 0; g < m.mean.size(); ++g) {
    out << "n " << g << " mean " << fmt(m.mean[g]) << " se " << fmt(m.mean_se[g]) << '\n';
  }
}

void cmd_check_assumptions(const json& c, Outputs& outs, std::ostream& out) {
  const AssumptionReport r = check_assumptions(real(c, "a"), real(c, "sigma"));
  json j = {{"a", r.a},
            {"h_in_L4", r.h_in_L4},
            {"Qh_in_L4", r.Qh_in_L4},
            {"hilsch2_holds", r.hilsch2_holds},
            {"norms", json::object()},
            {"flags", r.flags}};
  // divergent norms are reported as null
  for (const char* k : {"h_L2", "h_L4", "Qh_L4", "hilsch2_L2"}) {
    const auto it = r.norms.find(k);
    j["norms"][k] = it != r.norms.end() && std::isfinite(it->second) ? json(it->second) : json();
  }
  out << j.dump(2) << '\n';
  if (outs.enabled()) outs.open("assumptions.json") << j.dump(2) << '\n';
}

void dispatch(const std::string& name, const json& c, Outputs& outs, std::ostream& out) {
  if (name == "simulate") return cmd_simulate(c, outs, out);
  if (name == "variance") return cmd_variance(c, outs, out);
  if (name == "clt") return cmd_clt(c, outs, out);
  if (name == "slopes") return cmd_slopes(c, outs, out);
  if (name == "supercritical") return cmd_supercritical(c, outs, out);
  if (name == "martingale") return cmd_martingale(c, outs, out);
  if (name == "check-assumptions") return cmd_check_assumptions(c, outs, out);
  throw ConfigError("unknown command " + name);
}

json effective_config(const Command& cmd, const std::string& config_path,
                      const std::map<std::string, CLI::Option*>& given,
                      const std::map<std::string, std::string>& raw,
                      const std::map<std::string, bool>& flags) {
  json c = json::object();
  if (!config_path.empty()) {
    std::ifstream in(config_path);
    if (!in) throw ConfigError("cannot read config " + config_path);
    json file;
    try {
      file = json::parse(in);
    } catch (const json::exception& e) {
      throw ConfigError("malformed config " + config_path + ": " + e.what());
    }
    if (!file.is_object()) throw ConfigError("config must be a JSON object");
    for (const auto& [k, v] : file.items()) {
      if (k == "command") {
        if (v != cmd.name) throw ConfigError("config was written for '" + v.dump() + "'");
        continue;
      }
      if (std::find(cmd.keys.begin(), cmd.keys.end(), k) == cmd.keys.end()) {
        throw ConfigError("config key '" + k + "' does not apply to " + cmd.name);
      }
      check_type(key_info(k), v);
      c[k] = v;
    }
  }
  for (const auto& [k, opt] : given) {
    if (opt->count() == 0) continue;
    const Key& info = key_info(k);
    c[k] = info.kind == Kind::flag ? json(flags.at(k)) : convert(info, raw.at(k));
  }
  for (const auto& [k, v] : cmd.defaults.items()) {
    if (!c.contains(k)) c[k] = v;
  }
  return c;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Monte-Carlo laboratory for bifurcating autoregressive processes", "bmc-lab"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  struct Bound {
    CLI::App* app;
    std::map<std::string, CLI::Option*> options;
  };
  std::map<std::string, std::string> raw;
  std::map<std::string, bool> flags;
  std::string config_path, dump_path;
  std::map<std::string, Bound> bound;
  for (const auto& cmd : commands()) {
    Bound b{app.add_subcommand(cmd.name, cmd.help), {}};
    b.app->add_option("--config", config_path, "JSON config; flags override it");
    b.app->add_option("--dump-config", dump_path, "write the effective config and exit");
    for (const auto& k : cmd.keys) {
      const Key& info = key_info(k);
      if (info.kind == Kind::flag) {
        b.options[k] = b.app->add_flag(flag_name(k), flags[k], info.help);
      } else {
        static const std::map<Kind, const char*> type_names = {
            {Kind::real, "FLOAT"}, {Kind::integer, "INT"}, {Kind::seed, "UINT64"},
            {Kind::text, "TEXT"}};
        b.options[k] =
            b.app->add_option(flag_name(k), raw[k], info.help)->type_name(type_names.at(info.kind));
      }
    }
    bound.emplace(cmd.name, std::move(b));
  }

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(std::move(rev));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    if (code == 0) return 0;
    if (dynamic_cast<const CLI::CallForHelp*>(&e) == nullptr) err << app.help();
    return 2;
  }

  const Command* cmd = nullptr;
  for (const auto& c : commands()) {
    if (bound.at(c.name).app->parsed()) cmd = &c;
  }

  try {
    const auto start = std::chrono::steady_clock::now();
    const json c = effective_config(*cmd, config_path, bound.at(cmd->name).options, raw, flags);
    json canonical = c;
    canonical["command"] = cmd->name;
    if (!dump_path.empty()) {
      std::ofstream f(dump_path);
      if (!f) throw ConfigError("cannot write " + dump_path);
      f << canonical.dump(2) << '\n';
      return 0;
    }
    Outputs outs(c.value("out", std::string()));
    dispatch(cmd->name, c, outs, out);
    if (outs.enabled()) {
      json digest_input = canonical;
      digest_input.erase("threads");
      digest_input.erase("out");
      const double wall =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      json manifest = {{"command", cmd->name},
                       {"config", canonical},
                       {"config_digest", [&] {
                          char buf[20];
                          std::snprintf(buf, sizeof buf, "%016llx",
                                        static_cast<unsigned long long>(config_digest(digest_input)));
                          return std::string(buf);
                        }()},
                       {"version", kVersion},
                       {"wall_time_seconds", wall},
                       {"outputs", outs.paths()}};
      if (c.contains("seed")) manifest["master_seed"] = c.at("seed");
      outs.open("manifest.json") << manifest.dump(2) << '\n';
    }
    return 0;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const json::exception& e) {
    err << "error: bad config value: " << e.what() << '\n';
    return 2;
  } catch (const NumericRejection& e) {
    err << "rejected: " << e.what() << '\n';
    return 3;
  } catch (const ResourceCap& e) {
    err << "resource cap: " << e.what() << '\n';
    return 4;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return 1;
  }
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace bmc::cli
