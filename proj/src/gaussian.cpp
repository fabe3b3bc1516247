#include "crlab/gaussian.hpp"

namespace crlab {

std::string GaussianRational::str() const {
  if (im == 0) return rat_str(re);
  std::string s;
  if (re != 0) s = rat_str(re);
  if (im > 0 && !s.empty()) s += "+";
  if (im == -1)
    s += "-";
  else if (im != 1)
    s += rat_str(im) + "*";
  s += "i";
  return s;
}

}  // namespace crlab
