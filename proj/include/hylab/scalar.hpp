// Scalar backends: exact rationals (boost multiprecision) beside plain
// doubles, plus conversions between the two and "p/q" string I/O.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <stdexcept>
#include <string>

namespace hylab {

using Rat = boost::multiprecision::cpp_rational;
using Int = boost::multiprecision::cpp_int;

inline double to_double(const Rat& r) { return r.convert_to<double>(); }
inline double to_double(double d) { return d; }

// Scalar traits shared by the generic linear algebra below.
template <class S>
struct scalar_traits;

template <>
struct scalar_traits<Rat> {
  static constexpr bool exact = true;
  static Rat zero() { return Rat(0); }
  static Rat one() { return Rat(1); }
  static bool is_zero(const Rat& x) { return x == 0; }
  static double magnitude(const Rat& x) { return std::abs(to_double(x)); }
};

template <>
struct scalar_traits<double> {
  static constexpr bool exact = false;
  static double zero() { return 0.0; }
  static double one() { return 1.0; }
  static bool is_zero(double x) { return x == 0.0; }
  static double magnitude(double x) { return std::abs(x); }
};

// Renders a rational as "p/q" (or "p" when the denominator is 1).
inline std::string rat_to_str(const Rat& r) {
  Int num = boost::multiprecision::numerator(r);
  Int den = boost::multiprecision::denominator(r);
  std::string s = num.str();
  if (den != 1) s += "/" + den.str();
  return s;
}

// Parses "p/q" or "p".  Whitespace is not accepted; the sign may sit on
// either component and the result is normalized.
inline Rat str_to_rat(const std::string& s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rat(Int(s));
    Int num(s.substr(0, slash));
    Int den(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator");
    if (den < 0) { num = -num; den = -den; }
    return Rat(num, den);
  } catch (const std::exception&) {
    throw std::invalid_argument("bad rational literal: " + s);
  }
}

// Nearest rational with denominator at most max_den, by continued
// fractions.  Used to turn floating-point eigenvalue estimates into
// exact candidates that are then certified independently.
inline Rat rationalize(double x, long max_den) {
  if (!std::isfinite(x)) throw std::invalid_argument("rationalize: non-finite");
  bool neg = x < 0;
  double v = neg ? -x : x;
  // Convergents p/q of the continued fraction of v.
  long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double frac = v;
  for (int iter = 0; iter < 64; ++iter) {
    double fl = std::floor(frac);
    if (fl > 1e17) break;
    long a = static_cast<long>(fl);
    if (q0 + a * q1 > max_den && q1 > 0) break;
    long p2 = a * p1 + p0, q2 = a * q1 + q0;
    p0 = p1; q0 = q1; p1 = p2; q1 = q2;
    double rem = frac - fl;
    if (rem < 1e-15) break;
    frac = 1.0 / rem;
  }
  Rat r(p1, q1 == 0 ? 1 : q1);
  return neg ? Rat(-r) : r;
}

}  // namespace hylab
