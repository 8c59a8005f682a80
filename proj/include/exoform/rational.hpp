#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace exoform {

// Exact rational scalar used for every constant in the engine. Floating point
// only appears inside numeric sampling (is_zero) and probe evaluation.
using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

inline std::string to_string(const Rational& r) {
  const Integer num = boost::multiprecision::numerator(r);
  const Integer den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

// gcd extended to rationals: gcd(a/b, c/d) = gcd(a*d, c*b) / (b*d).
// Used to extract content from polynomial factors.
inline Rational rational_gcd(const Rational& a, const Rational& b) {
  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;
  if (a == 0) return b < 0 ? Rational(-b) : b;
  if (b == 0) return a < 0 ? Rational(-a) : a;
  Integer an = numerator(a), ad = denominator(a);
  Integer bn = numerator(b), bd = denominator(b);
  Integer g = gcd(Integer(an * bd), Integer(bn * ad));
  if (g < 0) g = -g;
  return Rational(g, ad * bd);
}

}  // namespace exoform
