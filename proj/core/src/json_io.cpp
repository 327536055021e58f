#include "arcmarkov/json_io.hpp"

#include <cstdio>
#include <regex>

#include "arcmarkov/errors.hpp"

namespace arcmarkov {

namespace {

template <class T>
T req(const json& j, const char* key) {
  if (!j.contains(key)) throw Error(ErrorCode::ConfigError, std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ConfigError, std::string("field '") + key + "': " + e.what());
  }
}

template <class T>
T opt(const json& j, const char* key, T fallback) {
  return j.contains(key) ? req<T>(j, key) : fallback;
}

}  // namespace

void to_json(json& j, const TrigPoly& p) {
  j = json{{"cos", p.a()}, {"sin", p.b()}, {"half_shift", p.half_shift()}};
}

void from_json(const json& j, TrigPoly& p) {
  auto a = req<std::vector<double>>(j, "cos");
  auto b = opt<std::vector<double>>(j, "sin", std::vector<double>(a.size(), 0.0));
  const bool half = opt<bool>(j, "half_shift", false);
  if (b.size() != a.size())
    throw Error(ErrorCode::ConfigError, "'cos' and 'sin' must have the same length");
  p = TrigPoly::from_arrays(std::move(a), std::move(b), half);
}

void to_json(json& j, const ChebSeries& p) {
  j = json{{"lo", p.lo()}, {"hi", p.hi()}, {"coeffs", p.coeffs()}};
}

void from_json(const json& j, ChebSeries& p) {
  p = ChebSeries(opt<double>(j, "lo", -1.0), opt<double>(j, "hi", 1.0),
                 req<std::vector<double>>(j, "coeffs"));
}

void to_json(json& j, const Interval& iv) { j = json::array({iv.lo, iv.hi}); }

void from_json(const json& j, Interval& iv) {
  if (!j.is_array() || j.size() != 2)
    throw Error(ErrorCode::ConfigError, "an interval is a two-element array");
  iv = {j[0].get<double>(), j[1].get<double>()};
}

void to_json(json& j, const IntervalSet& s) { j = s.intervals(); }

void from_json(const json& j, IntervalSet& s) {
  s = IntervalSet(j.get<std::vector<Interval>>());
}

IntervalSet parse_interval_set(const std::string& text) {
  static const std::regex piece(R"(\s*\[\s*([^,\]\s]+)\s*,\s*([^\]\s]+)\s*\]\s*(U|u|;)?)");
  std::vector<Interval> out;
  auto it = text.cbegin();
  std::smatch m;
  while (it != text.cend() && std::regex_search(it, text.cend(), m, piece,
                                                std::regex_constants::match_continuous)) {
    try {
      std::size_t p1 = 0, p2 = 0;
      const double lo = std::stod(m[1].str(), &p1), hi = std::stod(m[2].str(), &p2);
      if (p1 != m[1].str().size() || p2 != m[2].str().size())
        throw std::invalid_argument("trailing");
      out.push_back({lo, hi});
    } catch (const std::logic_error&) {
      throw Error(ErrorCode::ConfigError, "bad number in interval list '" + text + "'");
    }
    it = m[0].second;
  }
  if (out.empty() || it != text.cend())
    throw Error(ErrorCode::ConfigError, "cannot parse interval list '" + text + "'");
  try {
    return IntervalSet(std::move(out));
  } catch (const Error& e) {
    throw Error(ErrorCode::ConfigError, e.what());
  }
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + '"';
}

std::string csv_row(const std::vector<std::string>& fields) {
  std::string r;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) r += ',';
    r += csv_field(fields[i]);
  }
  return r + "\r\n";
}

std::uint64_t fnv1a(std::string_view bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

namespace equilibrium {

void to_json(json& j, const ArcSystem& a) { j = json{{"endpoints", a.endpoints()}}; }

void to_json(json& j, const EquilibriumMeasure& eq) {
  std::vector<double> mass;
  for (int i = 0; i < eq.arcs().m(); ++i) mass.push_back(eq.arc_mass(i));
  j = json{{"arcs", eq.arcs()},
           {"tau", eq.tau()},
           {"residuals", eq.residuals()},
           {"arc_mass", mass},
           {"total_mass", eq.total_mass()}};
}

void to_json(json& j, const EndpointFactor& f) {
  j = json{{"omega", f.omega},
           {"markov_M", f.markov_M},
           {"omega_limit", f.omega_limit},
           {"limit_rel_diff", f.limit_rel_diff}};
}

}  // namespace equilibrium

namespace tset {

void to_json(json& j, const TSetDescriptor& d) {
  j = json{{"U", d.U},
           {"N", d.N},
           {"branches", d.branches},
           {"branch_sign", d.branch_sign},
           {"extremal_points", d.extremal_points},
           {"e_set", d.e_set},
           {"critical_points", d.critical_points}};
}

}  // namespace tset

namespace fastdecay {

void to_json(json& j, const PrescribedZero& z) {
  j = json{{"at", z.at}, {"multiplicity", z.multiplicity}};
}

void from_json(const json& j, PrescribedZero& z) {
  z.at = req<double>(j, "at");
  z.multiplicity = opt<int>(j, "multiplicity", 1);
}

void to_json(json& j, const AlgebraicSpec& s) {
  j = json{{"kind", "algebraic"}, {"frame", {s.frame_lo, s.frame_hi}},
           {"a_prime", s.a_prime},  {"a", s.a},
           {"x0", s.x0},            {"b", s.b},
           {"b_prime", s.b_prime},  {"k0", s.k0},
           {"zeros", s.zeros},      {"m", s.m}};
}

void from_json(const json& j, AlgebraicSpec& s) {
  if (j.contains("frame")) {
    const auto f = req<std::vector<double>>(j, "frame");
    if (f.size() != 2) throw Error(ErrorCode::ConfigError, "'frame' needs two numbers");
    s.frame_lo = f[0];
    s.frame_hi = f[1];
  }
  s.a_prime = req<double>(j, "a_prime");
  s.a = req<double>(j, "a");
  s.x0 = req<double>(j, "x0");
  s.b = req<double>(j, "b");
  s.b_prime = req<double>(j, "b_prime");
  s.k0 = opt<int>(j, "k0", 1);
  s.zeros = opt<std::vector<PrescribedZero>>(j, "zeros", {});
  s.m = req<int>(j, "m");
}

void to_json(json& j, const TrigSpec& s) {
  j = json{{"kind", "trig"},
           {"t0", s.t0},
           {"alpha", s.alpha},
           {"beta", s.beta},
           {"alpha_prime", s.alpha_prime},
           {"beta_prime", s.beta_prime},
           {"k0", s.k0},
           {"zeros", s.zeros},
           {"m", s.m}};
}

void from_json(const json& j, TrigSpec& s) {
  s.t0 = req<double>(j, "t0");
  s.alpha = req<double>(j, "alpha");
  s.beta = req<double>(j, "beta");
  s.alpha_prime = req<double>(j, "alpha_prime");
  s.beta_prime = req<double>(j, "beta_prime");
  s.k0 = opt<int>(j, "k0", 1);
  s.zeros = req<std::vector<PrescribedZero>>(j, "zeros");
  s.m = req<int>(j, "m");
}

void to_json(json& j, const PropertyCheck& c) {
  j = json{{"name", c.name}, {"measured", c.measured}, {"bound", c.bound}, {"pass", c.pass}};
}

void to_json(json& j, const PropertyReport& r) {
  j = json{{"all_pass", r.all_pass()}, {"items", r.items}};
}

void to_json(json& j, const Parameters& p) {
  j = json{{"mu", p.mu},
           {"lambda", p.lambda},
           {"tau", p.tau},
           {"C1", p.C1},
           {"miranda_residual", p.miranda_residual}};
}

void to_json(json& j, const Decay& d) {
  j = json{{"eps_low", d.eps_low}, {"eps_high", d.eps_high}, {"delta_hat", d.delta_hat}};
}

void to_json(json& j, const AlgebraicResult& r) {
  j = json{{"spec", r.spec},   {"degree", r.Q.degree()}, {"Q", r.Q},
           {"params", r.params}, {"decay", r.decay},      {"report", r.report}};
}

void to_json(json& j, const TrigResult& r) {
  j = json{{"spec", r.spec},   {"degree", r.Q.degree()}, {"Q", r.Q},
           {"params", r.params}, {"decay", r.decay},      {"report", r.report}};
}

void to_json(json& j, const DecayFit& f) {
  j = json{{"m", f.m},
           {"log_eps", f.log_eps},
           {"slope", f.slope},
           {"delta_hat", f.delta_hat},
           {"rel_residual", f.rel_residual},
           {"monotone", f.monotone}};
}

}  // namespace fastdecay

namespace ineqlab {

void to_json(json& j, const InequalityReport& r) {
  j = json{{"bound", r.bound},
           {"set", r.set},
           {"point", r.point},
           {"rho", r.rho},
           {"n", r.n},
           {"k", r.k},
           {"measured", r.measured},
           {"theoretical", r.theoretical},
           {"ratio", r.ratio},
           {"segment_ratio", r.segment_ratio},
           {"source", r.source}};
}

void to_json(json& j, const ConvergenceTable& t) {
  json rows = json::array();
  for (const auto& r : t.rows) rows.push_back({{"l", r.l}, {"n", r.n}, {"ratio", r.ratio}});
  j = json{{"bound", t.bound},
           {"k", t.k},
           {"rows", rows},
           {"monotone_after_second", t.monotone_after_second()}};
}

void to_json(json& j, const SymmetrizationReport& r) {
  j = json{{"n", r.n},
           {"k", r.k},
           {"peaking_degree", r.peaking_degree},
           {"rho0", r.rho0},
           {"norm_T", r.norm_T},
           {"norm_Tstar", r.norm_Tstar},
           {"inflation", r.inflation},
           {"discrepancy_at_a", r.discrepancy_at_a},
           {"discrepancy_segment", r.discrepancy_segment},
           {"level_constancy", r.level_constancy}};
}

std::vector<std::string> csv_header(const InequalityReport&) {
  return {"bound", "set",         "point", "rho",           "n",     "k",
          "measured", "theoretical", "ratio", "segment_ratio", "source"};
}

std::vector<std::string> csv_values(const InequalityReport& r) {
  return {r.bound,
          r.set,
          format_double(r.point),
          format_double(r.rho),
          std::to_string(r.n),
          std::to_string(r.k),
          format_double(r.measured),
          format_double(r.theoretical),
          format_double(r.ratio),
          format_double(r.segment_ratio),
          r.source};
}

}  // namespace ineqlab

}  // namespace arcmarkov
