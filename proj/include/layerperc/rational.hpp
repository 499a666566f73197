#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

#include "error.hpp"

namespace layerperc {

using Integer = mpz_class;
using Rational = mpq_class;

/// a/b in lowest terms. The two-argument mpq_class constructor does not reduce.
inline Rational make_rational(long a, long b) {
  Rational q(a, b);
  q.canonicalize();
  return q;
}

/// Renders as "num/den" with den >= 1, always including the denominator.
inline std::string to_string(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

/// Accepts "num/den", "num", or a plain decimal like "0.3".
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw Error(ErrorCode::parse_error, "empty rational");
  try {
    if (auto dot = s.find('.'); dot != std::string::npos && s.find('/') == std::string::npos) {
      std::string digits = s.substr(0, dot) + s.substr(dot + 1);
      if (digits.empty() || digits == "-") throw Error(ErrorCode::parse_error, s);
      Integer den = 1;
      for (std::size_t i = dot + 1; i < s.size(); ++i) den *= 10;
      Rational q(Integer(digits, 10), den);
      q.canonicalize();
      return q;
    }
    Rational q(s, 10);
    if (q.get_den() == 0) throw Error(ErrorCode::parse_error, "zero denominator in " + s);
    q.canonicalize();
    return q;
  } catch (const std::invalid_argument&) {
    throw Error(ErrorCode::parse_error, "not a rational: " + s);
  }
}

inline int sign(const Integer& z) { return sgn(z); }
inline int sign(const Rational& q) { return sgn(q); }

}  // namespace layerperc
