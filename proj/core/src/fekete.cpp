#include "arcmarkov/fekete.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <Eigen/Dense>

#include "arcmarkov/errors.hpp"

namespace arcmarkov::equilibrium {

namespace {

double pair_energy(double d) { return -std::log(2.0 * std::abs(std::sin(0.5 * d))); }

double total_energy(const std::vector<double>& t) {
  double e = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i)
    for (std::size_t j = i + 1; j < t.size(); ++j) e += pair_energy(t[i] - t[j]);
  return e;
}

std::vector<int> arc_offsets(const std::vector<int>& counts) {
  std::vector<int> off(counts.size() + 1, 0);
  for (std::size_t j = 0; j < counts.size(); ++j) off[j + 1] = off[j] + counts[j];
  return off;
}

bool ordered(const std::vector<double>& t, const std::vector<int>& off) {
  for (std::size_t j = 0; j + 1 < off.size(); ++j)
    for (int i = off[j]; i + 1 < off[j + 1]; ++i)
      if (!(t[i] < t[i + 1])) return false;
  return true;
}

// Newton on the free (non-endpoint) angles. The pair energy is convex in the
// angle difference, so the restricted problem is convex on the ordered set.
double minimize(std::vector<double>& t, const std::vector<int>& counts) {
  const auto off = arc_offsets(counts);
  const int n = static_cast<int>(t.size());
  std::vector<int> free_idx, slot(n, -1);
  for (std::size_t j = 0; j < counts.size(); ++j)
    for (int i = off[j] + 1; i < off[j + 1] - 1; ++i) {
      slot[i] = static_cast<int>(free_idx.size());
      free_idx.push_back(i);
    }
  const int nf = static_cast<int>(free_idx.size());
  double e = total_energy(t);
  if (nf == 0) return e;

  double prev_gmax = std::numeric_limits<double>::infinity();
  for (int iter = 0; iter < 200; ++iter) {
    Eigen::VectorXd g = Eigen::VectorXd::Zero(nf), gabs = Eigen::VectorXd::Zero(nf);
    Eigen::MatrixXd H = Eigen::MatrixXd::Zero(nf, nf);
    double eabs = 0.0;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        const double h = 0.5 * (t[i] - t[j]);
        const double s = std::sin(h), c = std::cos(h);
        const double d1 = -0.5 * c / s;        // d/dt_i of pair energy
        const double d2 = 0.25 / (s * s);
        eabs += std::abs(pair_energy(t[i] - t[j]));
        const int a = slot[i], b = slot[j];
        if (a >= 0) {
          g[a] += d1;
          gabs[a] += std::abs(d1);
          H(a, a) += d2;
        }
        if (b >= 0) {
          g[b] -= d1;
          gabs[b] += std::abs(d1);
          H(b, b) += d2;
        }
        if (a >= 0 && b >= 0) {
          H(a, b) -= d2;
          H(b, a) -= d2;
        }
      }
    }
    // the gradient is a sum of large terms of both signs; below this it is noise
    const double gnoise = 1e4 * std::numeric_limits<double>::epsilon() * gabs.maxCoeff();
    const double gmax = g.cwiseAbs().maxCoeff();
    if (gmax < std::max(1e-9, gnoise)) return e;
    // stagnation well below the gradient scale: rounding has taken over
    if (gmax >= prev_gmax && gmax < 1e-6 * gabs.maxCoeff()) return e;
    prev_gmax = gmax;
    Eigen::LLT<Eigen::MatrixXd> llt(H);
    Eigen::VectorXd dx = (llt.info() == Eigen::Success) ? Eigen::VectorXd(llt.solve(-g))
                                                         : Eigen::VectorXd(-g);
    // near the minimum the decrease g.dx/2 drops below the rounding of e
    const double eslack = 64 * std::numeric_limits<double>::epsilon() * eabs;
    double step = 1.0;
    bool moved = false;
    for (int ls = 0; ls < 60 && !moved; ++ls, step *= 0.5) {
      std::vector<double> cand = t;
      for (int a = 0; a < nf; ++a) cand[free_idx[a]] += step * dx[a];
      if (!ordered(cand, off)) continue;
      const double ec = total_energy(cand);
      if (ec <= e + eslack) {
        t = std::move(cand);
        e = std::min(e, ec);
        moved = true;
      }
    }
    if (!moved) throw Error(ErrorCode::NoConvergence, "Fekete energy line search stalled");
  }
  throw Error(ErrorCode::NoConvergence, "Fekete energy minimization did not converge");
}

std::vector<double> initial_points(const ArcSystem& arcs, const std::vector<int>& counts) {
  std::vector<double> t;
  for (int j = 0; j < arcs.m(); ++j) {
    const Interval A = arcs.arc(j);
    const double c = 0.5 * (A.lo + A.hi), h = 0.5 * A.length();
    for (int i = 0; i < counts[j]; ++i)
      t.push_back(c - h * std::cos(std::numbers::pi * i / (counts[j] - 1)));
    t[t.size() - counts[j]] = A.lo;
    t.back() = A.hi;
  }
  return t;
}

// Re-sample the points of each arc to new counts by linear interpolation in
// the index, which keeps the warm start close to optimal.
std::vector<double> resample(const std::vector<double>& t, const std::vector<int>& from,
                             const std::vector<int>& to) {
  const auto off = arc_offsets(from);
  std::vector<double> out;
  for (std::size_t j = 0; j < from.size(); ++j) {
    const int n0 = from[j], n1 = to[j];
    for (int i = 0; i < n1; ++i) {
      const double u = static_cast<double>(i) * (n0 - 1) / (n1 - 1);
      const int k = std::min(static_cast<int>(u), n0 - 2);
      const double f = u - k;
      out.push_back((1.0 - f) * t[off[j] + k] + f * t[off[j] + k + 1]);
    }
  }
  return out;
}

struct Config {
  std::vector<int> counts;
  std::vector<double> t;
  double energy;
};

void exchange(Config& best, std::initializer_list<int> steps) {
  const int m = static_cast<int>(best.counts.size());
  for (int step : steps) {
    bool improved = true;
    while (improved) {
      improved = false;
      for (int from = 0; from < m && !improved; ++from) {
        for (int to = 0; to < m && !improved; ++to) {
          if (from == to || best.counts[from] - step < 2) continue;
          std::vector<int> c = best.counts;
          c[from] -= step;
          c[to] += step;
          std::vector<double> t = resample(best.t, best.counts, c);
          const double e = minimize(t, c);
          if (e < best.energy - 1e-12 * std::abs(best.energy)) {
            best = {std::move(c), std::move(t), e};
            improved = true;
          }
        }
      }
    }
  }
}

std::vector<int> proportional_counts(const ArcSystem& arcs, int n) {
  const int m = arcs.m();
  double total = 0.0;
  for (int j = 0; j < m; ++j) total += arcs.arc(j).length();
  std::vector<int> c(m);
  int used = 0;
  for (int j = 0; j < m; ++j) {
    c[j] = std::max(2, static_cast<int>(std::lround(n * arcs.arc(j).length() / total)));
    used += c[j];
  }
  auto big = std::max_element(c.begin(), c.end());
  *big += n - used;
  if (*big < 2) throw Error(ErrorCode::InvalidArgument, "too few points for the arc count");
  return c;
}

}  // namespace

FeketePoints::FeketePoints(ArcSystem arcs, std::vector<double> points, std::vector<int> counts,
                           double energy)
    : arcs_(std::move(arcs)), t_(std::move(points)), counts_(std::move(counts)), energy_(energy) {}

double FeketePoints::arc_mass(int j) const {
  const int n = static_cast<int>(t_.size()), m = static_cast<int>(counts_.size());
  return static_cast<double>(counts_.at(j) - 1) / (n - m);
}

double FeketePoints::density(double t, int window) const {
  const int n = static_cast<int>(t_.size()), m = static_cast<int>(counts_.size());
  const auto off = arc_offsets(counts_);
  for (int j = 0; j < m; ++j) {
    const double lo = t_[off[j]], hi = t_[off[j + 1] - 1];
    if (t < lo || t > hi) continue;
    auto it = std::upper_bound(t_.begin() + off[j], t_.begin() + off[j + 1], t);
    int i = static_cast<int>(it - t_.begin()) - 1;
    i = std::clamp(i, off[j], off[j + 1] - 2);
    const int a = std::max(off[j], i - window + 1);
    const int b = std::min(off[j + 1] - 1, i + window);
    return (b - a) / ((n - m) * (t_[b] - t_[a]));
  }
  return 0.0;
}

double FeketePoints::cdf(double t) const {
  const int n = static_cast<int>(t_.size()), m = static_cast<int>(counts_.size());
  const auto off = arc_offsets(counts_);
  double gaps = 0.0;
  for (int j = 0; j < m; ++j) {
    const double lo = t_[off[j]], hi = t_[off[j + 1] - 1];
    if (t >= hi) {
      gaps += counts_[j] - 1;
    } else if (t > lo) {
      auto it = std::upper_bound(t_.begin() + off[j], t_.begin() + off[j + 1], t);
      const int i = static_cast<int>(it - t_.begin()) - 1;
      gaps += (i - off[j]) + (t - t_[i]) / (t_[i + 1] - t_[i]);
    }
  }
  return gaps / (n - m);
}

std::vector<double> FeketePoints::histogram(const std::vector<double>& edges) const {
  std::vector<double> h;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i)
    h.push_back((cdf(edges[i + 1]) - cdf(edges[i])) / (edges[i + 1] - edges[i]));
  return h;
}

FeketePoints equilibrium_oracle(const ArcSystem& arcs, int n_points) {
  if (n_points < 200) throw Error(ErrorCode::InvalidArgument, "oracle needs n_points >= 200");
  const int m = arcs.m();
  const int n0 = std::min(n_points, 100);

  Config coarse;
  coarse.counts = proportional_counts(arcs, n0);
  coarse.t = initial_points(arcs, coarse.counts);
  coarse.energy = minimize(coarse.t, coarse.counts);
  exchange(coarse, {8, 4, 2, 1});

  // Scale the gap counts (n_j - 1) from n0 - m to n_points - m.
  std::vector<int> c(m);
  int used = 0;
  for (int j = 0; j < m; ++j) {
    c[j] = 1 + static_cast<int>(std::lround(static_cast<double>(coarse.counts[j] - 1) *
                                            (n_points - m) / (n0 - m)));
    c[j] = std::max(c[j], 2);
    used += c[j];
  }
  *std::max_element(c.begin(), c.end()) += n_points - used;

  Config fine;
  fine.t = resample(coarse.t, coarse.counts, c);
  fine.counts = c;
  fine.energy = minimize(fine.t, fine.counts);
  exchange(fine, {2, 1});
  return FeketePoints(arcs, std::move(fine.t), std::move(fine.counts), fine.energy);
}

}  // namespace arcmarkov::equilibrium
