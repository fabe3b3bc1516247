#include "crlab/affine.hpp"

namespace crlab {

std::string AffineExponent::str() const {
  std::string s;
  auto append = [&s](const Rational& coeff, const std::string& var) {
    if (coeff == 0) return;
    if (!s.empty() && coeff > 0) s += "+";
    if (var.empty()) {
      s += rat_str(coeff);
      return;
    }
    if (coeff == -1)
      s += "-";
    else if (coeff != 1)
      s += rat_str(coeff) + "*";
    s += var;
  };
  append(constant, "");
  for (std::size_t k = 0; k < kParamCount; ++k)
    append(slope[k], param_name(static_cast<Param>(k)));
  return s.empty() ? "0" : s;
}

}  // namespace crlab
