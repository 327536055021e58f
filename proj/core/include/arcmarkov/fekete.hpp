#pragma once

#include <vector>

#include "arcmarkov/equilibrium.hpp"

namespace arcmarkov::equilibrium {

// Discrete minimizer of sum_{i<j} -log|z_i - z_j| with z_i = e^{i t_i} on the
// arcs. Independent of the tau formula; used as a cross-check.
class FeketePoints {
 public:
  FeketePoints(ArcSystem arcs, std::vector<double> points, std::vector<int> counts,
               double energy);

  const ArcSystem& arcs() const { return arcs_; }
  // Sorted angles; each arc holds counts()[j] of them including both ends.
  const std::vector<double>& points() const { return t_; }
  const std::vector<int>& counts() const { return counts_; }
  double energy() const { return energy_; }

  // Each gap between consecutive points of an arc carries 1/(n - m) mass.
  double arc_mass(int j) const;
  // Local density 2w / ((n - m) (t_{i+w} - t_{i-w})) around t; 0 off the arcs.
  double density(double t, int window = 2) const;
  // Mass per unit length in each bin [edges[i], edges[i+1]].
  std::vector<double> histogram(const std::vector<double>& edges) const;

 private:
  ArcSystem arcs_;
  std::vector<double> t_;
  std::vector<int> counts_;
  double energy_;
  double cdf(double t) const;
};

// n_points >= 200. Arc counts are chosen by exchanging points between arcs
// while the minimal energy decreases.
FeketePoints equilibrium_oracle(const ArcSystem& arcs, int n_points);

}  // namespace arcmarkov::equilibrium
