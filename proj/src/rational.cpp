#include "crlab/rational.hpp"

#include <cctype>

namespace crlab {

Rational rat_from_string(const std::string& text) {
  if (text.empty()) throw ParseError("empty rational literal", 0);
  std::size_t pos = 0;
  if (text[pos] == '+' || text[pos] == '-') ++pos;
  bool digits = false;
  bool slash = false;
  for (std::size_t k = pos; k < text.size(); ++k) {
    char c = text[k];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digits = true;
    } else if (c == '/' && !slash && digits) {
      slash = true;
      digits = false;
      if (k + 1 < text.size() && text[k + 1] == '-') ++k;  // allow p/-q
    } else {
      throw ParseError("malformed rational literal '" + text + "'", k);
    }
  }
  if (!digits) throw ParseError("malformed rational literal '" + text + "'", text.size());
  Rational r;
  if (r.set_str(text, 10) != 0)
    throw ParseError("malformed rational literal '" + text + "'", 0);
  if (r.get_den() == 0) throw DivisionByZero();
  r.canonicalize();
  return r;
}

}  // namespace crlab
