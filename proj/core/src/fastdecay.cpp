#include "arcmarkov/fastdecay.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <sstream>

#include "arcmarkov/errors.hpp"
#include "arcmarkov/miranda.hpp"
#include "arcmarkov/quadrature.hpp"

namespace arcmarkov::fastdecay {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kGrid = 10000;

int even_up(int k) { return k % 2 == 0 ? k : k + 1; }
int odd_up(int k) { return k % 2 == 1 ? k : k + 1; }

[[noreturn]] void bad_spec(const std::string& why) {
  throw Error(ErrorCode::InvalidArgument, "fast-decay spec: " + why);
}

[[noreturn]] void too_small(const std::string& why) {
  throw Error(ErrorCode::DegreeTooSmall, "degree too small: " + why);
}

double ipow(double x, int e) {
  double r = 1.0;
  while (e > 0) {
    if (e & 1) r *= x;
    x *= x;
    e >>= 1;
  }
  return r;
}

// Composite Gauss-Legendre nodes on [lo, hi] with panels of length <= h_max
// and `per_panel(h)` nodes on a panel of length h.
struct Nodes {
  std::vector<double> x, w;
};

template <class PerPanel>
Nodes make_nodes(double lo, double hi, double h_max, PerPanel per_panel) {
  Nodes nd;
  const int panels = std::max(1, static_cast<int>(std::ceil((hi - lo) / h_max)));
  const double h = (hi - lo) / panels;
  const GaussRule& g = gauss_legendre(per_panel(h));
  for (int p = 0; p < panels; ++p) {
    const double c = lo + (p + 0.5) * h;
    for (std::size_t i = 0; i < g.x.size(); ++i) {
      nd.x.push_back(c + 0.5 * h * g.x[i]);
      nd.w.push_back(0.5 * h * g.w[i]);
    }
  }
  return nd;
}

// Integrals over each interval of ((1 - lambda) B_alpha + lambda B_beta) * R,
// normalized by the integral of the absolute value; B_* are tabulated once.
struct GapTable {
  Nodes nodes;
  std::vector<double> b_alpha, b_beta;
};

template <class RFactor>
double normalized_integral(const GapTable& g, double lambda, RFactor r) {
  double s = 0.0, sa = 0.0;
  for (std::size_t i = 0; i < g.nodes.x.size(); ++i) {
    const double v = ((1.0 - lambda) * g.b_alpha[i] + lambda * g.b_beta[i]) * r(g.nodes.x[i]);
    s += g.nodes.w[i] * v;
    sa += g.nodes.w[i] * std::abs(v);
  }
  return sa > 0.0 ? s / sa : 0.0;
}

// Sign pattern read off the centers of the lower faces, then solved.
MirandaResult solve_parameters(MirandaProblem& prob, const Tolerances& tol) {
  const std::size_t d = prob.lo.size();
  prob.sign_pattern.assign(d, 1);
  for (std::size_t i = 0; i < d; ++i) {
    std::vector<double> x(d);
    for (std::size_t j = 0; j < d; ++j) x[j] = 0.5 * (prob.lo[j] + prob.hi[j]);
    x[i] = prob.lo[i];
    const double v = prob.f(x)[i];
    if (v == 0.0) too_small("parameter " + std::to_string(i) + " has no sign on its lower face");
    prob.sign_pattern[i] = v < 0.0 ? 1 : -1;
  }
  try {
    return miranda_solve(prob, tol.miranda_tol);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::SignPatternViolated) too_small(e.what());
    throw;
  }
}

PropertyCheck item(std::string name, double measured, double bound, bool pass) {
  return {std::move(name), measured, bound, pass};
}

// Node layout of the algebraic construction: the prescribed zeros plus a
// virtual node (multiplicity 0) at a frame end when that side has no zeros.
struct AlgLayout {
  std::vector<double> node;
  std::vector<int> kprime;
  int peak_gap = 0;
};

AlgLayout alg_layout(const AlgebraicSpec& s) {
  AlgLayout L;
  std::vector<PrescribedZero> z = s.zeros;
  std::sort(z.begin(), z.end(), [](auto& p, auto& q) { return p.at < q.at; });
  bool left = false, right = false;
  for (const auto& p : z) (p.at < s.x0 ? left : right) = true;
  if (!left) {
    L.node.push_back(s.frame_lo);
    L.kprime.push_back(0);
  }
  for (const auto& p : z) {
    L.node.push_back(p.at);
    L.kprime.push_back(even_up(p.multiplicity));
  }
  if (!right) {
    L.node.push_back(s.frame_hi);
    L.kprime.push_back(0);
  }
  for (std::size_t g = 0; g + 1 < L.node.size(); ++g)
    if (L.node[g] < s.x0 && s.x0 < L.node[g + 1]) L.peak_gap = static_cast<int>(g);
  return L;
}

struct TrigLayout {
  std::vector<double> s;  // shifted zeros alpha_j + 2 pi eps_j, sorted
  std::vector<int> kprime;
  double alpha_lo = 0.0, alpha_hi = 0.0;  // alpha_* and alpha^*
  std::vector<Interval> I;                // I_0 .. I_{l-1}
};

TrigLayout trig_layout(const TrigSpec& sp) {
  TrigLayout L;
  std::vector<std::pair<double, int>> z;
  for (const auto& p : sp.zeros)
    z.push_back({p.at > sp.beta_prime ? p.at : p.at + kTwoPi, even_up(p.multiplicity)});
  std::sort(z.begin(), z.end());
  for (auto& [s, k] : z) {
    L.s.push_back(s);
    L.kprime.push_back(k);
  }
  L.alpha_lo = L.s.front();
  L.alpha_hi = L.s.back();
  L.I.push_back({L.alpha_hi - kTwoPi, L.alpha_lo});
  for (std::size_t j = 1; j < L.s.size(); ++j) L.I.push_back({L.s[j - 1], L.s[j]});
  return L;
}

// Largest admissible noise on values of a polynomial with the given
// coefficient l1 norm.
double noise(double coeff_sum) { return 64.0 * kEps * std::max(coeff_sum, 1.0); }

}  // namespace

bool PropertyReport::all_pass() const {
  return std::all_of(items.begin(), items.end(), [](const auto& i) { return i.pass; });
}

const PropertyCheck& PropertyReport::at(const std::string& name) const {
  for (const auto& i : items)
    if (i.name == name) return i;
  throw Error(ErrorCode::OutOfRange, "no property named " + name);
}

std::string PropertyReport::first_failure() const {
  for (const auto& i : items)
    if (!i.pass)
    {
      std::ostringstream os;
      os.precision(6);
      os << i.name << " (measured " << i.measured << ", bound " << i.bound << ")";
      return os.str();
    }
  return {};
}

void validate(const AlgebraicSpec& s) {
  if (!(s.frame_lo < s.a_prime && s.a_prime < s.a && s.a < s.x0 && s.x0 < s.b &&
        s.b < s.b_prime && s.b_prime < s.frame_hi))
    bad_spec("need frame_lo < a' < a < x0 < b < b' < frame_hi");
  if (s.k0 < 1) bad_spec("k0 must be positive");
  std::vector<double> at;
  for (const auto& z : s.zeros) {
    if (z.multiplicity < 1) bad_spec("zero multiplicities must be positive");
    if (!(z.at > s.frame_lo && z.at < s.frame_hi)) bad_spec("zero outside the frame");
    if (z.at >= s.a_prime && z.at <= s.b_prime) bad_spec("zero inside the buffer [a', b']");
    at.push_back(z.at);
  }
  std::sort(at.begin(), at.end());
  if (std::adjacent_find(at.begin(), at.end()) != at.end()) bad_spec("coincident zeros");
}

void validate(const TrigSpec& s) {
  if (!(-kPi < s.alpha_prime && s.alpha_prime < s.alpha && s.alpha < s.t0 && s.t0 < s.beta &&
        s.beta < s.beta_prime && s.beta_prime < kPi))
    bad_spec("need -pi < alpha' < alpha < t0 < beta < beta' < pi");
  if (s.k0 < 1) bad_spec("k0 must be positive");
  if (s.zeros.empty()) bad_spec("at least one prescribed zero is required");
  std::vector<double> at;
  for (const auto& z : s.zeros) {
    if (z.multiplicity < 1) bad_spec("zero multiplicities must be positive");
    if (!(z.at > -kPi && z.at < kPi)) bad_spec("zero outside (-pi, pi)");
    if (z.at >= s.alpha_prime && z.at <= s.beta_prime)
      bad_spec("zero inside the buffer [alpha', beta']");
    at.push_back(z.at);
  }
  std::sort(at.begin(), at.end());
  if (std::adjacent_find(at.begin(), at.end()) != at.end()) bad_spec("coincident zeros");
}

int degree_constant(const AlgebraicSpec& s) {
  const AlgLayout L = alg_layout(s);
  const int ksum = std::accumulate(L.kprime.begin(), L.kprime.end(), 0);
  const int nodes = static_cast<int>(L.node.size());
  return 2 * (ksum + nodes - 2 + odd_up(s.k0) + 1);
}

int degree_constant(const TrigSpec& s) {
  int ksum = 0;
  for (const auto& z : s.zeros) ksum += even_up(z.multiplicity);
  const int l = static_cast<int>(s.zeros.size());
  return ksum + (l - 1) + odd_up(s.k0) + (l % 2);
}

// ---------------------------------------------------------------------------
// Algebraic construction

AlgebraicResult build_fd_algebraic(const AlgebraicSpec& spec, bool require_properties,
                                   const Tolerances& tol) {
  validate(spec);
  const AlgLayout L = alg_layout(spec);
  const int K = degree_constant(spec);
  const int mu = (spec.m - K) / 4;
  if (spec.m < K + 4)
    too_small("m = " + std::to_string(spec.m) + " is below " + std::to_string(K + 4));

  const double lo = spec.frame_lo, hi = spec.frame_hi, c2 = hi - lo;
  const double alpha = 0.5 * (spec.a + spec.a_prime), beta = 0.5 * (spec.b + spec.b_prime);
  const int k0p = odd_up(spec.k0);
  const int ngaps = static_cast<int>(L.node.size()) - 1;
  const int p = L.peak_gap;

  auto base = [&](double x, double delta) {
    double z = 1.0;
    for (std::size_t j = 0; j < L.node.size(); ++j) z *= ipow(x - L.node[j], L.kprime[j]);
    const double u = (x - delta) / c2;
    return z * ipow(1.0 - u * u, mu) * ipow(x - spec.x0, k0p);
  };

  const int deg_s1 = K / 2 - 1 + 2 * mu;
  std::vector<GapTable> gaps(ngaps);
  for (int g = 0; g < ngaps; ++g) {
    gaps[g].nodes = make_nodes(L.node[g], L.node[g + 1], 1e300,
                               [&](double) { return deg_s1 / 2 + 2; });
    for (double x : gaps[g].nodes.x) {
      gaps[g].b_alpha.push_back(base(x, alpha));
      gaps[g].b_beta.push_back(base(x, beta));
    }
  }

  // One unknown per gap: lambda in the peak gap, tau_g elsewhere.
  MirandaProblem prob;
  for (int g = 0; g < ngaps; ++g) {
    prob.lo.push_back(g == p ? 0.0 : L.node[g]);
    prob.hi.push_back(g == p ? 1.0 : L.node[g + 1]);
  }
  prob.f = [&](const std::vector<double>& v) {
    auto r = [&](double x) {
      double prod = 1.0;
      for (int g = 0; g < ngaps; ++g)
        if (g != p) prod *= x - v[g];
      return prod;
    };
    std::vector<double> f(ngaps);
    for (int g = 0; g < ngaps; ++g) f[g] = normalized_integral(gaps[g], v[p], r);
    return f;
  };
  const MirandaResult sol = solve_parameters(prob, tol);

  AlgebraicResult res;
  res.spec = spec;
  res.params.mu = mu;
  res.params.lambda = sol.x[p];
  res.params.miranda_residual = sol.max_residual;
  for (int g = 0; g < ngaps; ++g)
    if (g != p) res.params.tau.push_back(sol.x[g]);

  // Sampled from the closed form (see the trigonometric case below).
  const ChebSeries s1 = ChebSeries::interpolate(
      [&](double x) {
        double v = (1.0 - res.params.lambda) * base(x, alpha) + res.params.lambda * base(x, beta);
        for (double t : res.params.tau) v *= x - t;
        return v;
      },
      lo, hi, deg_s1 + 1);

  ChebSeries S = s1.antiderivative(L.node.front());
  const double at_peak = S(spec.x0);
  if (at_peak == 0.0 || !std::isfinite(at_peak)) too_small("S vanishes at the peak");
  res.params.C1 = 1.0 / at_peak;
  res.S = S * res.params.C1;
  res.Q = res.S * res.S;
  res.report = check_algebraic(spec, res.S, res.Q, &res.decay);
  if (require_properties && !res.report.all_pass()) too_small(res.report.first_failure());
  return res;
}

PropertyReport check_algebraic(const AlgebraicSpec& spec, const ChebSeries& S,
                               const ChebSeries& Q, Decay* decay_out) {
  const AlgLayout L = alg_layout(spec);
  const double lo = spec.frame_lo, hi = spec.frame_hi, width = hi - lo;
  const int deg = std::max(Q.degree(), 1);
  const ChebSeries dQ = Q.derivative(), dS = S.derivative();
  // derivative checks get an extra factor deg: coefficient rounding adds up
  // across the whole expansion
  const double nQ = noise(Q.abs_coeff_sum()), ndQ = deg * noise(dQ.abs_coeff_sum()),
               ndS = deg * noise(dS.abs_coeff_sum());
  const double markov = 2.0 * deg * deg / width;

  double qmax = 0.0, qmax_off = 0.0, qmin = 0.0, eps_high = 0.0, eps_low = 0.0, sq = 0.0,
         mono_viol = 0.0, change_viol = 0.0;
  const double left = L.node[L.peak_gap], right = L.node[L.peak_gap + 1];
  for (int i = 0; i <= kGrid; ++i) {
    const double x = lo + width * i / kGrid;
    const double q = Q(x), s = S(x);
    qmax = std::max(qmax, q);
    qmin = std::min(qmin, q);
    sq = std::max(sq, std::abs(q - s * s));
    if (x < spec.a || x > spec.b) qmax_off = std::max(qmax_off, q);
    if (x >= spec.a && x <= spec.b) eps_high = std::max(eps_high, std::abs(q - 1.0));
    if (x <= spec.a_prime || x >= spec.b_prime) {
      double z = 1.0;
      for (const auto& zr : spec.zeros) z *= ipow(std::abs(x - zr.at), zr.multiplicity);
      z = std::min(1.0, z);
      if (z >= 1e-10) eps_low = std::max(eps_low, q / z);
    }
    if (x > left && x < spec.x0) mono_viol = std::max(mono_viol, -dS(x));
    if (x > spec.x0 && x < right) mono_viol = std::max(mono_viol, dS(x));
    if (x >= spec.a_prime && x <= spec.a) change_viol = std::max(change_viol, -dQ(x));
    if (x >= spec.b && x <= spec.b_prime) change_viol = std::max(change_viol, dQ(x));
  }
  for (double x : {spec.a, spec.b}) eps_high = std::max(eps_high, std::abs(Q(x) - 1.0));

  double zero_err = 0.0;
  for (const auto& zr : spec.zeros) {
    const auto d = Q.derivatives_at(zr.at, zr.multiplicity);
    for (int k = 0; k <= zr.multiplicity; ++k)
      zero_err = std::max(zero_err, std::abs(d[k]) / (ipow(markov, k) * std::max(qmax, 1.0)));
  }
  double peak_err = 0.0;
  const auto dp = Q.derivatives_at(spec.x0, spec.k0);
  for (int k = 1; k <= spec.k0; ++k)
    peak_err = std::max(peak_err, std::abs(dp[k]) / (ipow(markov, k) * std::max(qmax, 1.0)));

  Decay dec;
  dec.eps_low = eps_low;
  dec.eps_high = eps_high;
  const double worst = std::max(eps_low, eps_high);
  dec.delta_hat = worst > 0.0 ? -std::log(worst) / spec.m : std::numeric_limits<double>::infinity();
  if (decay_out) *decay_out = dec;

  PropertyReport r;
  r.items.push_back(item("degree", Q.degree(), spec.m, Q.degree() <= spec.m));
  const double at = std::abs(Q(spec.x0) - 1.0);
  r.items.push_back(item("atxnull", at, 1e-10, at <= 1e-10));
  r.items.push_back(item("datxnull", peak_err, 1e-9, peak_err <= 1e-9));
  r.items.push_back(item("peaking", qmax_off, 1.0, qmax_off < 1.0));
  r.items.push_back(item("bounded", qmax, 1.0 + 1e-12, qmax <= 1.0 + 1e-12));
  r.items.push_back(item("peak_monotone", mono_viol, ndS, mono_viol <= ndS));
  r.items.push_back(item("high", eps_high, 1.0, eps_high < 1.0));
  r.items.push_back(item("low", eps_low, 1.0, eps_low < 1.0));
  r.items.push_back(item("change", change_viol, ndQ, change_viol <= ndQ));
  r.items.push_back(item("zeros", zero_err, 1e-9, zero_err <= 1e-9));
  r.items.push_back(item("nonneg", -qmin, nQ, -qmin <= nQ));
  r.items.push_back(item("squaring", sq, 1e-11, sq <= 1e-11));
  r.items.push_back(item("decay", dec.delta_hat, 0.0, dec.delta_hat > 0.0));
  return r;
}

// ---------------------------------------------------------------------------
// Trigonometric construction

TrigResult build_fd_trig(const TrigSpec& spec, bool require_properties, const Tolerances& tol) {
  validate(spec);
  const TrigLayout L = trig_layout(spec);
  const int K = degree_constant(spec);
  if (spec.m < K + 2)
    too_small("m = " + std::to_string(spec.m) + " is below " + std::to_string(K + 2));
  const int mu = (spec.m - K) / 2;
  const int l = static_cast<int>(spec.zeros.size());
  const bool odd = l % 2 == 1;
  const int k0p = odd_up(spec.k0);
  const double pa = 0.5 * (spec.alpha + spec.alpha_prime);
  const double pb = 0.5 * (spec.beta + spec.beta_prime);
  const double fix = L.alpha_hi - kPi;

  auto base = [&](double t, double c) {
    double v = 1.0;
    for (std::size_t j = 0; j < L.s.size(); ++j) v *= ipow(std::sin(0.5 * (t - L.s[j])), L.kprime[j]);
    const double cc = std::cos(0.5 * (t - c));
    v *= ipow(cc * cc, mu) * ipow(std::sin(0.5 * (t - spec.t0)), k0p);
    if (odd) v *= std::cos(0.5 * (t - fix));
    return v;
  };

  const int deg_s2 = mu + K / 2;
  std::vector<GapTable> gaps(l);
  for (int j = 0; j < l; ++j) {
    gaps[j].nodes = make_nodes(L.I[j].lo, L.I[j].hi, 1.0, [&](double h) {
      return static_cast<int>(std::ceil(0.7 * deg_s2 * h)) + 16;
    });
    for (double t : gaps[j].nodes.x) {
      gaps[j].b_alpha.push_back(base(t, pa));
      gaps[j].b_beta.push_back(base(t, pb));
    }
  }

  MirandaProblem prob;
  prob.lo.push_back(0.0);
  prob.hi.push_back(1.0);
  for (int j = 1; j < l; ++j) {
    prob.lo.push_back(L.I[j].lo);
    prob.hi.push_back(L.I[j].hi);
  }
  prob.f = [&](const std::vector<double>& v) {
    auto r = [&](double t) {
      double prod = 1.0;
      for (int j = 1; j < l; ++j) prod *= std::sin(0.5 * (t - v[j]));
      return prod;
    };
    std::vector<double> f(l);
    for (int j = 0; j < l; ++j) f[j] = normalized_integral(gaps[j], v[0], r);
    return f;
  };
  const MirandaResult sol = solve_parameters(prob, tol);

  TrigResult res;
  res.spec = spec;
  res.params.mu = mu;
  res.params.lambda = sol.x[0];
  res.params.miranda_residual = sol.max_residual;
  res.params.tau.assign(sol.x.begin() + 1, sol.x.end());

  // Sampled from the closed form: multiplying the factors out coefficientwise
  // leaves rounding far above the (exponentially small) values of s2.
  const TrigPoly s2 = TrigPoly::interpolate(
      [&](double t) {
        double v = (1.0 - res.params.lambda) * base(t, pa) + res.params.lambda * base(t, pb);
        for (double tau : res.params.tau) v *= std::sin(0.5 * (t - tau));
        return v;
      },
      deg_s2);

  // The gap conditions force a zero mean; the solver residual leaves a
  // rounding-level constant which is dropped before integrating. Measured
  // against the mean of |s2|.
  double abs_mean = 0.0;
  {
    const int grid = 8 * std::max(s2.degree(), 16);
    for (int i = 0; i < grid; ++i) abs_mean += std::abs(s2(-kPi + kTwoPi * i / grid));
    abs_mean /= grid;
  }
  const double mean_rel = std::abs(s2.a()[0]) / std::max(abs_mean, 1e-300);
  if (mean_rel > 1e-6)
    throw Error(ErrorCode::NonzeroMean, "gap conditions left a relative mean of " +
                                            std::to_string(mean_rel));
  TrigPoly S = s2.with_constant_zeroed().antiderivative(L.alpha_lo);
  const double at_peak = S(spec.t0);
  if (at_peak == 0.0 || !std::isfinite(at_peak)) too_small("S vanishes at the peak");
  res.params.C1 = 1.0 / at_peak;
  res.S = S * res.params.C1;
  res.Q = res.S * res.S;
  res.report = check_trig(spec, res.S, res.Q, &res.decay);
  if (require_properties && !res.report.all_pass()) too_small(res.report.first_failure());
  return res;
}

PropertyReport check_trig(const TrigSpec& spec, const TrigPoly& S, const TrigPoly& Q,
                          Decay* decay_out) {
  const TrigLayout L = trig_layout(spec);
  const int deg = std::max(Q.degree(), 1);
  const TrigPoly dQ = Q.derivative(), dS = S.derivative();
  // derivative checks get an extra factor deg: coefficient rounding adds up
  // across the whole expansion
  const double nQ = noise(Q.abs_coeff_sum()), ndQ = deg * noise(dQ.abs_coeff_sum()),
               ndS = deg * noise(dS.abs_coeff_sum());

  double qmax = 0.0, qmax_off = 0.0, qmin = 0.0, eps_high = 0.0, eps_low = 0.0, sq = 0.0,
         mono_viol = 0.0, change_viol = 0.0;
  const double win_lo = L.alpha_hi - kTwoPi;
  for (int i = 0; i < kGrid; ++i) {
    const double t = -kPi + kTwoPi * i / kGrid;
    const double q = Q(t), s = S(t);
    qmax = std::max(qmax, q);
    qmin = std::min(qmin, q);
    sq = std::max(sq, std::abs(q - s * s));
    if (t < spec.alpha || t > spec.beta) qmax_off = std::max(qmax_off, q);
    if (t >= spec.alpha && t <= spec.beta) eps_high = std::max(eps_high, std::abs(q - 1.0));
    if (t <= spec.alpha_prime || t >= spec.beta_prime) {
      double z = 1.0;
      for (const auto& zr : spec.zeros)
        z *= ipow(std::abs(std::sin(0.5 * (t - zr.at))), zr.multiplicity);
      z = std::min(1.0, z);
      if (z >= 1e-10) eps_low = std::max(eps_low, q / z);
    }
    // position inside the peak interval I_0 = [alpha^* - 2 pi, alpha_*]
    double u = t;
    while (u < win_lo) u += kTwoPi;
    while (u >= L.alpha_hi) u -= kTwoPi;
    if (u > win_lo && u < spec.t0) mono_viol = std::max(mono_viol, -dS(t));
    if (u > spec.t0 && u < L.alpha_lo) mono_viol = std::max(mono_viol, dS(t));
    if (t >= spec.alpha_prime && t <= spec.alpha) change_viol = std::max(change_viol, -dQ(t));
    if (t >= spec.beta && t <= spec.beta_prime) change_viol = std::max(change_viol, dQ(t));
  }
  for (double t : {spec.alpha, spec.beta}) eps_high = std::max(eps_high, std::abs(Q(t) - 1.0));

  double zero_err = 0.0;
  for (const auto& zr : spec.zeros) {
    TrigPoly d = Q;
    for (int k = 0; k <= zr.multiplicity; ++k) {
      zero_err = std::max(zero_err, std::abs(d(zr.at)) / (ipow(deg, k) * std::max(qmax, 1.0)));
      d = d.derivative();
    }
  }
  double peak_err = 0.0;
  {
    TrigPoly d = Q.derivative();
    for (int k = 1; k <= spec.k0; ++k) {
      peak_err = std::max(peak_err, std::abs(d(spec.t0)) / (ipow(deg, k) * std::max(qmax, 1.0)));
      d = d.derivative();
    }
  }

  Decay dec;
  dec.eps_low = eps_low;
  dec.eps_high = eps_high;
  const double worst = std::max(eps_low, eps_high);
  dec.delta_hat = worst > 0.0 ? -std::log(worst) / spec.m : std::numeric_limits<double>::infinity();
  if (decay_out) *decay_out = dec;

  PropertyReport r;
  r.items.push_back(item("degree", Q.degree(), spec.m, Q.degree() <= spec.m));
  const double at = std::abs(Q(spec.t0) - 1.0);
  r.items.push_back(item("atxnull", at, 1e-10, at <= 1e-10));
  r.items.push_back(item("datxnull", peak_err, 1e-9, peak_err <= 1e-9));
  r.items.push_back(item("peaking", qmax_off, 1.0, qmax_off < 1.0));
  r.items.push_back(item("bounded", qmax, 1.0 + 1e-12, qmax <= 1.0 + 1e-12));
  r.items.push_back(item("peak_monotone", mono_viol, ndS, mono_viol <= ndS));
  r.items.push_back(item("nonneg", -qmin, nQ, -qmin <= nQ));
  r.items.push_back(item("zeros", zero_err, 1e-9, zero_err <= 1e-9));
  r.items.push_back(item("low", eps_low, 1.0, eps_low < 1.0));
  r.items.push_back(item("high", eps_high, 1.0, eps_high < 1.0));
  r.items.push_back(item("change", change_viol, ndQ, change_viol <= ndQ));
  r.items.push_back(item("squaring", sq, 1e-11, sq <= 1e-11));
  r.items.push_back(item("decay", dec.delta_hat, 0.0, dec.delta_hat > 0.0));
  return r;
}

// ---------------------------------------------------------------------------

double peaking_rho0(const tset::TSetDescriptor& d, double a) {
  const int j = tset::branch_of(d, a);
  if (j < 0) throw Error(ErrorCode::OutOfRange, "peak is not in the T-set");
  int jb = -1;
  for (std::size_t i = 0; i < d.branches.size(); ++i)
    if (std::abs(d.branches[i].hi - a) <= 1e-12 || std::abs(d.branches[i].lo - a) <= 1e-12)
      jb = static_cast<int>(i);
  if (jb < 0) throw Error(ErrorCode::OutOfRange, "peak is not an extremal point");
  const double rho = d.e_set.max_rho(a);
  if (rho <= 0.0) throw Error(ErrorCode::IntervalConditionViolated, "no interval condition at peak");
  // following gap (to the next branch start, wrapping once around the circle)
  double next = d.branches.front().lo + kTwoPi;
  for (const auto& b : d.branches)
    if (b.lo > a + 1e-12) {
      next = b.lo;
      break;
    }
  double r = 0.25 * std::min({d.branches[jb].length(), next - a, rho, kPi / 4.0});
  r = std::min(r, 0.49 * (kPi - a));
  r = std::min(r, 0.49 * (a + kPi));
  return r;
}

TrigResult extremal_peaking_factor(const tset::TSetDescriptor& d, double a, double rho0,
                                   int order, int m, bool require_properties) {
  TrigSpec s;
  s.t0 = a;
  s.alpha = a - rho0;
  s.beta = a + rho0;
  s.alpha_prime = a - 2.0 * rho0;
  s.beta_prime = a + 2.0 * rho0;
  s.k0 = order;
  for (double e : d.extremal_points)
    if (std::abs(e - a) > 1e-12) s.zeros.push_back({e, order});
  s.m = m;
  return build_fd_trig(s, require_properties);
}

DecayFit fit_decay_rate(const std::vector<int>& m, const std::vector<double>& eps) {
  if (m.size() != eps.size() || m.size() < 2)
    throw Error(ErrorCode::InvalidArgument, "decay fit needs at least two matching points");
  DecayFit f;
  f.m = m;
  for (double e : eps) f.log_eps.push_back(std::log(e));
  const double n = static_cast<double>(m.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < m.size(); ++i) {
    mx += m[i] / n;
    my += f.log_eps[i] / n;
  }
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < m.size(); ++i) {
    sxx += (m[i] - mx) * (m[i] - mx);
    sxy += (m[i] - mx) * (f.log_eps[i] - my);
    syy += (f.log_eps[i] - my) * (f.log_eps[i] - my);
  }
  f.slope = sxy / sxx;
  f.delta_hat = -f.slope;
  const double r2 = syy > 0.0 ? sxy * sxy / (sxx * syy) : 1.0;
  f.rel_residual = std::sqrt(std::max(0.0, 1.0 - r2));
  f.monotone = true;
  for (std::size_t i = 1; i < m.size(); ++i)
    if (!(f.log_eps[i] < f.log_eps[i - 1])) f.monotone = false;
  return f;
}

DecayFit decay_ladder(AlgebraicSpec spec, const std::vector<int>& ms) {
  std::vector<double> eps;
  for (int m : ms) {
    spec.m = m;
    const auto r = build_fd_algebraic(spec, false);
    eps.push_back(std::max(r.decay.eps_low, r.decay.eps_high));
  }
  return fit_decay_rate(ms, eps);
}

DecayFit decay_ladder(TrigSpec spec, const std::vector<int>& ms) {
  std::vector<double> eps;
  for (int m : ms) {
    spec.m = m;
    const auto r = build_fd_trig(spec, false);
    eps.push_back(std::max(r.decay.eps_low, r.decay.eps_high));
  }
  return fit_decay_rate(ms, eps);
}

}  // namespace arcmarkov::fastdecay
