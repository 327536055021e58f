#pragma once

#include <functional>
#include <utility>
#include <vector>

namespace arcmarkov {

// Root of f in [lo, hi] given f(lo) and f(hi) of opposite sign (either may
// be zero). Bracketing TOMS 748 to roughly full double precision.
double find_root(const std::function<double(double)>& f, double lo, double hi, double flo,
                 double fhi);
double find_root(const std::function<double(double)>& f, double lo, double hi);

// Consecutive grid cells of [lo, hi] (n cells) across which f changes sign.
std::vector<std::pair<double, double>> sign_change_brackets(
    const std::function<double(double)>& f, double lo, double hi, int n);

}  // namespace arcmarkov
