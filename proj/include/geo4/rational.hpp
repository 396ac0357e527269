#pragma once

#include <boost/rational.hpp>

#include <cstdint>
#include <string>

#include "geo4/errors.hpp"

namespace geo4 {

/// Compare only against another Rational: with Boost 1.74 under C++20 the
/// mixed rational/integer operator== recurses through the rewritten
/// candidates.
using Rational = boost::rational<std::int64_t>;

inline std::string to_string(const Rational &q) {
  return std::to_string(q.numerator()) + "/" + std::to_string(q.denominator());
}

/// Accepts "p/q" or a plain integer.
inline Rational rational_from_string(const std::string &s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos)
      return Rational(std::stoll(s));
    return Rational(std::stoll(s.substr(0, slash)),
                    std::stoll(s.substr(slash + 1)));
  } catch (const std::exception &) {
    throw ParseError("bad rational '" + s + "'", 1, 1);
  }
}

inline bool is_integer(const Rational &q) { return q.denominator() == 1; }

} // namespace geo4
