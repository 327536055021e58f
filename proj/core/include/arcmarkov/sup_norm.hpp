#pragma once

#include <functional>

#include "arcmarkov/cheb_series.hpp"
#include "arcmarkov/interval_set.hpp"
#include "arcmarkov/trig_poly.hpp"

namespace arcmarkov {

struct SupResult {
  double value = 0.0;
  double argmax = 0.0;
};

// max |f| on [lo, hi]: Chebyshev-Lobatto sampling with `samples` points, then
// each leading local maximum is polished by solving df = 0 in its bracket.
SupResult sup_norm_fn(const std::function<double(double)>& f,
                      const std::function<double(double)>& df, double lo, double hi,
                      int samples);

// Samples per component: max(4096, 32 * degree).
SupResult sup_norm(const TrigPoly& p, const IntervalSet& E);
SupResult sup_norm(const TrigPoly& p, double lo, double hi);
SupResult sup_norm(const ChebSeries& p, double lo, double hi);

}  // namespace arcmarkov
