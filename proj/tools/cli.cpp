#include "cli.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "arcmarkov/composition.hpp"
#include "arcmarkov/equilibrium.hpp"
#include "arcmarkov/errors.hpp"
#include "arcmarkov/fastdecay.hpp"
#include "arcmarkov/ineqlab.hpp"
#include "arcmarkov/json_io.hpp"
#include "arcmarkov/tset.hpp"

namespace arcmarkov::cli {

namespace {

using Row = std::vector<std::string>;

[[noreturn]] void config_error(const std::string& msg) { throw Error(ErrorCode::ConfigError, msg); }

// ---------------------------------------------------------------------------
// Typed access to the merged configuration

struct Config {
  json j;

  bool has(const std::string& key) const { return j.contains(key); }

  double num(const std::string& key) const {
    const json& v = at(key);
    if (v.is_number()) return v.get<double>();
    if (v.is_string()) {
      try {
        std::size_t pos = 0;
        const double d = std::stod(v.get<std::string>(), &pos);
        if (pos == v.get<std::string>().size()) return d;
      } catch (const std::logic_error&) {
      }
    }
    config_error("'" + key + "' must be a number");
  }
  double num(const std::string& key, double fallback) const { return has(key) ? num(key) : fallback; }

  int integer(const std::string& key) const {
    const double d = num(key);
    if (d != std::floor(d) || std::abs(d) > 1e9) config_error("'" + key + "' must be an integer");
    return static_cast<int>(d);
  }
  int integer(const std::string& key, int fallback) const {
    return has(key) ? integer(key) : fallback;
  }

  std::string str(const std::string& key, const std::string& fallback) const {
    if (!has(key)) return fallback;
    const json& v = at(key);
    if (!v.is_string()) config_error("'" + key + "' must be a string");
    return v.get<std::string>();
  }

  std::vector<double> nums(const std::string& key) const {
    const json& v = at(key);
    std::vector<double> out;
    if (v.is_array()) {
      for (const auto& e : v) {
        if (!e.is_number()) config_error("'" + key + "' must hold numbers");
        out.push_back(e.get<double>());
      }
    } else if (v.is_string()) {
      std::stringstream ss(v.get<std::string>());
      std::string item;
      while (std::getline(ss, item, ',')) {
        try {
          std::size_t pos = 0;
          out.push_back(std::stod(item, &pos));
          if (item.find_first_not_of(" \t", pos) != std::string::npos) throw std::invalid_argument(item);
        } catch (const std::logic_error&) {
          config_error("'" + key + "' has a bad entry '" + item + "'");
        }
      }
    } else if (v.is_number()) {
      out.push_back(v.get<double>());
    } else {
      config_error("'" + key + "' must be a list");
    }
    if (out.empty()) config_error("'" + key + "' is empty");
    return out;
  }

  std::vector<int> ints(const std::string& key) const {
    std::vector<int> out;
    for (double d : nums(key)) {
      if (d != std::floor(d)) config_error("'" + key + "' must hold integers");
      out.push_back(static_cast<int>(d));
    }
    return out;
  }

  const json& at(const std::string& key) const {
    if (!has(key)) config_error("missing '" + key + "'");
    return j.at(key);
  }
};

// ---------------------------------------------------------------------------
// Outputs

struct Outcome {
  json result;
  Row header;
  std::vector<Row> rows;
  std::vector<std::string> failures;
  bool pass() const { return failures.empty(); }
};

std::string fmt(double v) { return format_double(v); }

// ---------------------------------------------------------------------------
// Shared inputs

tset::TSetDescriptor descriptor_from(const Config& c, const std::string& fallback) {
  const std::string kind = c.str("tset", fallback);
  if (kind == "single")
    return tset::analyze_admissible(tset::single_interval_U(c.num("theta0", std::numbers::pi / 2)));
  if (kind == "two") return tset::analyze_admissible(tset::two_interval_U());
  if (kind == "custom") {
    TrigPoly U;
    try {
      U = c.at("U").get<TrigPoly>();
    } catch (const json::exception& e) {
      config_error(std::string("'U': ") + e.what());
    }
    return tset::analyze_admissible(U);
  }
  config_error("unknown --tset '" + kind + "' (single, two, custom)");
}

IntervalSet arcs_from(const Config& c) {
  const json& v = c.at("arcs");
  if (v.is_string()) return parse_interval_set(v.get<std::string>());
  try {
    return v.get<IntervalSet>();
  } catch (const json::exception& e) {
    config_error(std::string("'arcs': ") + e.what());
  }
}

struct SetInput {
  IntervalSet E;
  std::optional<tset::TSetDescriptor> d;
};

SetInput set_from(const Config& c, const std::string& fallback) {
  if (c.has("arcs")) return {arcs_from(c), std::nullopt};
  tset::TSetDescriptor d = descriptor_from(c, fallback);
  IntervalSet E = d.e_set;
  return {std::move(E), std::move(d)};
}

double endpoint_from(const Config& c, const IntervalSet& E) {
  return c.num("a", E.intervals().front().hi);
}

const tset::TSetDescriptor& need_tset(const SetInput& s, const char* what) {
  if (!s.d) config_error(std::string(what) + " needs a T-set (--tset), not --arcs");
  return *s.d;
}

double slack_bound(int n) { return 1.0 + ineqlab::slack(n); }

Row with_report(const ineqlab::InequalityReport& r) { return ineqlab::csv_values(r); }

// ---------------------------------------------------------------------------
// Commands

Outcome eq_measure(const Config& c) {
  Outcome o;
  const IntervalSet E = c.has("arcs") ? arcs_from(c) : set_from(c, "single").E;
  const auto eq = ineqlab::solve_for(E);
  std::vector<double> points;
  if (c.has("endpoint")) {
    points = c.nums("endpoint");
  } else {
    points = eq.arcs().endpoints();
  }
  o.result["measure"] = eq;
  o.header = {"a", "omega", "markov_M", "omega_limit", "limit_rel_diff"};
  json factors = json::array();
  for (double a : points) {
    const auto f = equilibrium::omega_endpoint(eq, a);
    factors.push_back({{"a", a}, {"factor", f}});
    o.rows.push_back({fmt(a), fmt(f.omega), fmt(f.markov_M), fmt(f.omega_limit), fmt(f.limit_rel_diff)});
  }
  o.result["endpoints"] = factors;
  if (c.has("density-grid")) {
    const int n = c.integer("density-grid");
    if (n < 1) config_error("'density-grid' must be positive");
    json dens = json::array();
    for (const auto& I : E.intervals())
      for (int i = 1; i <= n; ++i) {
        const double t = I.lo + I.length() * i / (n + 1);
        dens.push_back({{"t", t}, {"density", eq.density(t)}});
      }
    o.result["density"] = dens;
  }
  if (c.has("expect-omega")) {
    const double want = c.num("expect-omega"), tol = c.num("tol", 1e-6);
    const double got = equilibrium::omega_endpoint(eq, points.front()).omega;
    if (!(std::abs(got - want) <= tol))
      o.failures.push_back("omega " + fmt(got) + " differs from " + fmt(want));
  }
  if (!(eq.max_residual() < 1e-10)) o.failures.push_back("tau residual " + fmt(eq.max_residual()));
  return o;
}

Outcome tset_cmd(const Config& c) {
  Outcome o;
  const auto d = descriptor_from(c, "single");
  const auto eq = ineqlab::solve_for(d.e_set);
  const double tol = c.num("tol", 1e-6);
  o.result["descriptor"] = d;
  o.header = {"a", "u_prime_abs", "omega", "rhs", "rel_discrepancy"};
  json ids = json::array();
  for (const auto& I : d.e_set.intervals())
    for (double a : {I.lo, I.hi}) {
      const auto id = tset::endpoint_derivative_identity(d, eq, a);
      ids.push_back({{"a", a},
                     {"u_prime_abs", id.u_prime_abs},
                     {"omega", id.omega},
                     {"rhs", id.rhs},
                     {"rel_discrepancy", id.rel_discrepancy}});
      o.rows.push_back({fmt(a), fmt(id.u_prime_abs), fmt(id.omega), fmt(id.rhs),
                        fmt(id.rel_discrepancy)});
      if (!(id.rel_discrepancy <= tol))
        o.failures.push_back("endpoint identity off by " + fmt(id.rel_discrepancy) + " at " + fmt(a));
    }
  o.result["endpoint_identity"] = ids;
  return o;
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) config_error("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    config_error("'" + path + "' is not valid JSON: " + e.what());
  }
}

template <class Spec, class Result>
void fastdecay_report(const Config& c, const Spec& spec, Outcome& o) {
  if (c.has("ladder")) {
    const auto fit = fastdecay::decay_ladder(spec, c.ints("ladder"));
    o.result["fit"] = fit;
    o.header = {"m", "log_eps"};
    for (std::size_t i = 0; i < fit.m.size(); ++i)
      o.rows.push_back({std::to_string(fit.m[i]), fmt(fit.log_eps[i])});
    if (!(fit.delta_hat > 0.0)) o.failures.push_back("fitted decay rate is not positive");
    if (!fit.monotone) o.failures.push_back("decay ladder is not monotone");
    return;
  }
  Result r;
  if constexpr (std::is_same_v<Spec, fastdecay::AlgebraicSpec>)
    r = fastdecay::build_fd_algebraic(spec, false);
  else
    r = fastdecay::build_fd_trig(spec, false);
  o.result["fastdecay"] = r;
  o.header = {"name", "measured", "bound", "pass"};
  for (const auto& i : r.report.items)
    o.rows.push_back({i.name, fmt(i.measured), fmt(i.bound), i.pass ? "1" : "0"});
  if (!r.report.all_pass()) o.failures.push_back(r.report.first_failure());
}

Outcome fastdecay_cmd(const Config& c) {
  Outcome o;
  json spec = c.has("spec") && c.at("spec").is_object() ? c.at("spec")
                                                        : load_json_file(c.str("spec", ""));
  const std::string kind = spec.value("kind", "");
  try {
    if (kind == "algebraic") {
      fastdecay_report<fastdecay::AlgebraicSpec, fastdecay::AlgebraicResult>(
          c, spec.get<fastdecay::AlgebraicSpec>(), o);
    } else if (kind == "trig") {
      fastdecay_report<fastdecay::TrigSpec, fastdecay::TrigResult>(c, spec.get<fastdecay::TrigSpec>(),
                                                                   o);
    } else {
      config_error("spec 'kind' must be 'algebraic' or 'trig'");
    }
  } catch (const json::exception& e) {
    config_error(std::string("bad spec: ") + e.what());
  }
  return o;
}

void random_reports(const Config& c, Outcome& o, const char* label,
                    const std::function<ineqlab::InequalityReport(const TrigPoly&)>& check) {
  const int count = c.integer("random", 20), n = c.integer("n", 32);
  if (count < 1 || n < 1) config_error("'random' and 'n' must be positive");
  const std::uint64_t seed = c.j.at("seed").get<std::uint64_t>();
  json reps = json::array();
  o.header = ineqlab::csv_header({});
  for (int i = 0; i < count; ++i) {
    const auto r = check(ineqlab::random_trig_poly(n, seed + static_cast<std::uint64_t>(i)));
    reps.push_back(r);
    o.rows.push_back(with_report(r));
    if (!(r.ratio <= slack_bound(r.n)))
      o.failures.push_back(std::string(label) + " ratio " + fmt(r.ratio) + " for sample " +
                           std::to_string(i));
  }
  o.result["reports"] = reps;
}

void expect_ratio(const Config& c, double got, Outcome& o) {
  if (!c.has("expect-ratio")) return;
  const double want = c.num("expect-ratio"), tol = c.num("tol", 1e-9);
  if (!(std::abs(got - want) <= tol))
    o.failures.push_back("ratio " + fmt(got) + " differs from " + fmt(want));
}

Outcome verify_markov(const Config& c) {
  Outcome o;
  const SetInput s = set_from(c, "single");
  const auto eq = ineqlab::solve_for(s.E);
  const double a = endpoint_from(c, s.E);
  const int k = c.integer("k", 1);
  if (k < 1) config_error("'k' must be >= 1");
  if (c.has("l") || c.has("l-list")) {
    const auto& d = need_tset(s, "a sharpness scan");
    const auto table =
        ineqlab::markov_sharpness_scan(d, a, k, c.has("l-list") ? c.ints("l-list") : c.ints("l"), eq);
    o.result["table"] = table;
    o.header = {"l", "n", "ratio"};
    for (const auto& r : table.rows) {
      o.rows.push_back({std::to_string(r.l), std::to_string(r.n), fmt(r.ratio)});
      if (!(r.ratio <= slack_bound(r.n)))
        o.failures.push_back("ratio " + fmt(r.ratio) + " above the envelope at n = " +
                             std::to_string(r.n));
    }
    expect_ratio(c, table.final_ratio(), o);
    return o;
  }
  const double rho = c.num("rho", s.E.max_rho(a));
  random_reports(c, o, "markov", [&](const TrigPoly& T) {
    return ineqlab::markov_endpoint_check(T, s.E, a, rho, k, eq);
  });
  return o;
}

Outcome verify_bernstein(const Config& c) {
  Outcome o;
  const SetInput s = set_from(c, "single");
  const auto eq = ineqlab::solve_for(s.E);
  const auto& first = s.E.intervals().front();
  const double t0 = c.num("t0", 0.5 * (first.lo + first.hi));
  const int k = c.integer("k", 1);
  if (k < 1) config_error("'k' must be >= 1");
  if (c.has("l")) {
    const auto& d = need_tset(s, "an extremal-family check");
    const auto r = ineqlab::bernstein_interior_check(tset::extremal_sequence(d, c.integer("l")),
                                                     s.E, t0, k, eq);
    o.result["report"] = r;
    o.header = ineqlab::csv_header(r);
    o.rows.push_back(with_report(r));
    if (!(r.ratio <= slack_bound(r.n))) o.failures.push_back("bernstein ratio " + fmt(r.ratio));
    expect_ratio(c, r.ratio, o);
    return o;
  }
  random_reports(c, o, "bernstein", [&](const TrigPoly& T) {
    return ineqlab::bernstein_interior_check(T, s.E, t0, k, eq);
  });
  return o;
}

Outcome symmetrize_cmd(const Config& c) {
  Outcome o;
  const auto d = descriptor_from(c, "two");
  const double a = endpoint_from(c, d.e_set);
  const int k = c.integer("k", 1);
  if (k < 1) config_error("'k' must be >= 1");
  const int order = c.integer("order", 2 * k * k);
  const double degree_c = c.num("degree-c", ineqlab::kPeakingDegreeC);
  const std::vector<int> ns = c.has("n-list") ? c.ints("n-list") : std::vector<int>{64, 128, 256};
  const std::uint64_t seed = c.j.at("seed").get<std::uint64_t>();
  json reps = json::array();
  o.header = {"n", "k", "peaking_degree", "rho0", "norm_T", "norm_Tstar", "inflation",
              "discrepancy_at_a", "discrepancy_segment", "level_constancy"};
  double prev = std::numeric_limits<double>::infinity();
  for (int n : ns) {
    if (n < 1) config_error("'n-list' entries must be positive");
    const auto r = ineqlab::symmetrization_experiment(d, ineqlab::random_trig_poly(n, seed), a, k,
                                                      order, degree_c);
    reps.push_back(r);
    o.rows.push_back({std::to_string(r.n), std::to_string(r.k), std::to_string(r.peaking_degree),
                      fmt(r.rho0), fmt(r.norm_T), fmt(r.norm_Tstar), fmt(r.inflation),
                      fmt(r.discrepancy_at_a), fmt(r.discrepancy_segment), fmt(r.level_constancy)});
    const std::string at = " at n = " + std::to_string(n);
    if (!(r.inflation < 0.05)) o.failures.push_back("inflation " + fmt(r.inflation) + at);
    if (!(r.level_constancy < 1e-10))
      o.failures.push_back("level constancy " + fmt(r.level_constancy) + at);
    if (!(r.discrepancy_segment < prev))
      o.failures.push_back("discrepancy did not decrease" + at);
    prev = r.discrepancy_segment;
  }
  o.result["reports"] = reps;
  return o;
}

Outcome faa_cmd(const Config& c) {
  Outcome o;
  const AlgPoly f(c.nums("f")), g(c.nums("g"));
  const double x = c.num("x", 0.0);
  const int k = c.integer("k", 1);
  if (k < 1 || k > composition::kMaxPartitionOrder)
    config_error("'k' must be in [1, " + std::to_string(composition::kMaxPartitionOrder) + "]");
  std::vector<double> outer, inner;
  const double gx = g(x);
  for (int j = 1; j <= k; ++j) {
    outer.push_back(f.derivative(j)(gx));
    inner.push_back(g.derivative(j)(x));
  }
  const double value = composition::faa_di_bruno(outer, inner, k);
  const double exact = f.compose(g).derivative(k)(x);
  const double scale = std::max(std::abs(exact), 1e-300);
  const double rel = std::abs(value - exact) / scale;
  o.result = {{"x", x}, {"k", k}, {"faa_di_bruno", value}, {"exact_composition", exact},
              {"rel_diff", rel}};
  o.header = {"x", "k", "faa_di_bruno", "exact_composition", "rel_diff"};
  o.rows.push_back({fmt(x), std::to_string(k), fmt(value), fmt(exact), fmt(rel)});
  const double tol = c.num("tol", 1e-10);
  if (!(rel <= tol) && !(std::abs(value - exact) <= tol * 1e-300))
    o.failures.push_back("routes differ by " + fmt(rel));
  return o;
}

// ---------------------------------------------------------------------------
// Wiring

struct Command {
  const char* name;
  const char* help;
  std::vector<const char*> options;
  Outcome (*fn)(const Config&);
};

const std::vector<Command>& commands() {
  static const std::vector<Command> cmds = {
      {"eq-measure", "Equilibrium measure, density and endpoint factors",
       {"arcs", "tset", "theta0", "endpoint", "density-grid", "expect-omega", "tol"}, eq_measure},
      {"tset", "Analyze an admissible polynomial and its T-set",
       {"tset", "theta0", "tol"}, tset_cmd},
      {"fastdecay", "Build a fast-decreasing polynomial from a JSON spec",
       {"spec", "ladder"}, fastdecay_cmd},
      {"verify-markov", "Endpoint Markov check or sharpness scan",
       {"arcs", "tset", "theta0", "a", "rho", "k", "l", "l-list", "random", "n", "expect-ratio",
        "tol"},
       verify_markov},
      {"verify-bernstein", "Interior Bernstein check",
       {"arcs", "tset", "theta0", "t0", "k", "l", "random", "n", "expect-ratio", "tol"},
       verify_bernstein},
      {"symmetrize", "Symmetrization experiment along an n ladder",
       {"tset", "theta0", "a", "k", "order", "n-list", "degree-c"}, symmetrize_cmd},
      {"faa", "k-th derivative of f(g(x)) by partitions and by exact composition",
       {"f", "g", "x", "k", "tol"}, faa_cmd},
  };
  return cmds;
}

// CLI strings become JSON scalars when they read as numbers or booleans.
json scalar(const std::string& s) {
  try {
    json v = json::parse(s);
    if (v.is_number() || v.is_boolean()) return v;
  } catch (const json::exception&) {
  }
  return s;
}

void write_error(std::ostream& err, const std::string& code, const std::string& msg) {
  err << json{{"error", {{"code", code}, {"message", msg}}}}.dump() << "\n";
}
void write_error(std::ostream& err, ErrorCode code, const std::string& msg) {
  write_error(err, to_string(code), msg);
}

int exit_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::ConfigError:
    case ErrorCode::InvalidArgument:
    case ErrorCode::OutOfRange:
    case ErrorCode::NotAdmissible:
    case ErrorCode::IntervalConditionViolated:
    case ErrorCode::NotInterior:
      return kConfigError;
    default:
      return kAssertionFailed;
  }
}

std::string render(const Outcome& o, const std::string& command, const std::string& hash,
                   std::uint64_t seed, const std::string& format) {
  if (format == "csv") {
    Row head = o.header;
    head.push_back("config_hash");
    head.push_back("seed");
    std::string text = csv_row(head);
    for (Row r : o.rows) {
      r.push_back(hash);
      r.push_back(std::to_string(seed));
      text += csv_row(r);
    }
    return text;
  }
  json doc = {{"command", command},   {"config_hash", hash}, {"seed", seed},
              {"pass", o.pass()},      {"failures", o.failures}, {"result", o.result}};
  return doc.dump(2) + "\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Markov and Bernstein factors on unions of arcs"};
  app.require_subcommand(1);
  std::string config_path, format = "json", output;
  std::uint64_t seed = 0;
  std::map<std::string, std::string> raw;
  std::map<std::string, CLI::App*> subs;
  for (const auto& cmd : commands()) {
    CLI::App* sub = app.add_subcommand(cmd.name, cmd.help);
    sub->add_option("--config", config_path, "JSON file with the same keys as the flags");
    sub->add_option("--seed", seed, "Random seed (recorded in the output)");
    sub->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--output", output, "Write here instead of stdout");
    for (const char* opt : cmd.options) sub->add_option(std::string("--") + opt, raw[opt]);
    subs[cmd.name] = sub;
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kPass;
  } catch (const CLI::ParseError& e) {
    write_error(err, ErrorCode::ConfigError, e.what());
    return kConfigError;
  }

  const Command* cmd = nullptr;
  for (const auto& c : commands())
    if (subs[c.name]->parsed()) cmd = &c;
  CLI::App* sub = subs[cmd->name];

  try {
    Config cfg;
    cfg.j = json::object();
    if (!config_path.empty()) {
      cfg.j = load_json_file(config_path);
      if (!cfg.j.is_object()) config_error("config must be a JSON object");
      if (cfg.j.contains("command") && cfg.j["command"] != cmd->name)
        config_error("config is for '" + cfg.j["command"].dump() + "'");
    }
    for (const char* opt : cmd->options)
      if (sub->count(std::string("--") + opt) > 0) cfg.j[opt] = scalar(raw[opt]);
    if (sub->count("--seed") > 0 || !cfg.j.contains("seed")) cfg.j["seed"] = seed;
    if (!cfg.j["seed"].is_number_unsigned()) config_error("'seed' must be a non-negative integer");
    if (sub->count("--format") == 0 && cfg.j.contains("format")) format = cfg.j["format"];
    if (format != "json" && format != "csv") config_error("format must be json or csv");
    cfg.j["format"] = format;
    cfg.j["command"] = cmd->name;
    if (sub->count("--output") == 0 && cfg.j.contains("output")) output = cfg.j["output"];
    cfg.j.erase("output");

    const std::string hash = hex64(fnv1a(cfg.j.dump()));
    const Outcome o = cmd->fn(cfg);
    const std::string text =
        render(o, cmd->name, hash, cfg.j["seed"].get<std::uint64_t>(), format);
    if (output.empty()) {
      out << text;
    } else {
      std::ofstream f(output, std::ios::binary);
      if (!f) config_error("cannot write '" + output + "'");
      f << text;
    }
    if (!o.pass()) {
      for (const auto& m : o.failures) write_error(err, "AssertionFailed", m);
      return kAssertionFailed;
    }
    return kPass;
  } catch (const Error& e) {
    write_error(err, e.code(), e.what());
    return exit_for(e.code());
  } catch (const json::exception& e) {
    write_error(err, ErrorCode::ConfigError, e.what());
    return kConfigError;
  }
}

}  // namespace arcmarkov::cli
