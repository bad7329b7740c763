#include "poset_pursuit/rational.hpp"

#include "poset_pursuit/errors.hpp"

namespace pursuit {

Time parse_time(std::string_view text) {
  Time t;
  std::string s(text);
  if (s.empty() || t.set_str(s, 10) != 0 || t.get_den() == 0)
    throw ParseError("invalid rational time '" + s + "'");
  t.canonicalize();
  return t;
}

std::string to_string(const Time& t) { return t.get_str(); }

Time midpoint(const Time& a, const Time& b) {
  Time m = (a + b) / 2;
  m.canonicalize();
  return m;
}

Time make_time(long num, long den) {
  Time t(num, den);
  t.canonicalize();
  return t;
}

}  // namespace pursuit
