#include "strata/rational.hpp"

#include <stdexcept>

namespace strata {

Rational parse_rational(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty rational");
  size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  bool slash = false;
  bool digits = false;
  for (size_t i = start; i < s.size(); ++i) {
    if (s[i] == '/') {
      if (slash || !digits) throw std::invalid_argument("malformed rational '" + s + "'");
      slash = true;
      digits = false;
    } else if (s[i] >= '0' && s[i] <= '9') {
      digits = true;
    } else {
      throw std::invalid_argument("malformed rational '" + s + "'");
    }
  }
  if (!digits) throw std::invalid_argument("malformed rational '" + s + "'");
  Rational q(s[0] == '+' ? s.substr(1) : s, 10);
  if (q.get_den() == 0) throw std::invalid_argument("zero denominator");
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

}  // namespace strata
