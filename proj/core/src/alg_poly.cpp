#include "arcmarkov/alg_poly.hpp"

namespace arcmarkov {

AlgPoly to_double(const ExactAlgPoly& p) {
  std::vector<double> c;
  c.reserve(p.coeffs().size());
  for (const auto& v : p.coeffs()) c.push_back(static_cast<double>(v));
  return AlgPoly(std::move(c));
}

}  // namespace arcmarkov
